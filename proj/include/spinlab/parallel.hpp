#pragma once

#include <cstddef>
#include <functional>

namespace spinlab {

// Caps the number of worker threads used by data-parallel loops. 1 (the
// default) runs everything on the calling thread.
void set_thread_count(int n);
int thread_count();

// Splits [begin, end) into contiguous chunks of at least `grain` items and
// runs body(lo, hi) on each. Chunks write disjoint outputs, so results do not
// depend on thread count.
void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t grain = 4096);

}  // namespace spinlab
