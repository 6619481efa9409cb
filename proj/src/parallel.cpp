#include "spinlab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

namespace spinlab {
namespace {

class Pool {
 public:
  explicit Pool(int workers) {
    for (int w = 0; w < workers; ++w) threads_.emplace_back([this, w] { loop(w); });
  }
  ~Pool() {
    {
      std::lock_guard lock(mu_);
      stop_ = true;
    }
    cv_.notify_all();
    for (auto& t : threads_) t.join();
  }

  int workers() const { return static_cast<int>(threads_.size()); }

  // Runs chunk c on worker c for c < workers; chunk `workers` on the caller.
  void run(int chunks, const std::function<void(int)>& task) {
    {
      std::lock_guard lock(mu_);
      task_ = &task;
      chunks_ = chunks;
      pending_ = chunks - 1;
      ++generation_;
    }
    cv_.notify_all();
    task(chunks - 1);
    std::unique_lock lock(mu_);
    done_.wait(lock, [this] { return pending_ == 0; });
    task_ = nullptr;
  }

 private:
  void loop(int w) {
    unsigned long seen = 0;
    for (;;) {
      const std::function<void(int)>* task = nullptr;
      {
        std::unique_lock lock(mu_);
        cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
        if (w >= chunks_ - 1) continue;
        task = task_;
      }
      (*task)(w);
      {
        std::lock_guard lock(mu_);
        --pending_;
      }
      done_.notify_one();
    }
  }

  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::condition_variable done_;
  const std::function<void(int)>* task_ = nullptr;
  int chunks_ = 0;
  int pending_ = 0;
  unsigned long generation_ = 0;
  bool stop_ = false;
};

std::mutex g_config_mu;
int g_threads = 1;
std::unique_ptr<Pool> g_pool;
std::mutex g_run_mu;

}  // namespace

void set_thread_count(int n) {
  std::lock_guard lock(g_config_mu);
  g_threads = std::max(1, n);
  g_pool.reset();
  if (g_threads > 1) g_pool = std::make_unique<Pool>(g_threads - 1);
}

int thread_count() {
  std::lock_guard lock(g_config_mu);
  return g_threads;
}

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t grain) {
  grain = std::max<std::size_t>(1, grain);
  if (end <= begin) return;
  const std::size_t n = end - begin;
  Pool* pool = nullptr;
  {
    std::lock_guard lock(g_config_mu);
    pool = g_pool.get();
  }
  // Nested calls from inside a worker run inline.
  std::unique_lock run_lock(g_run_mu, std::try_to_lock);
  if (pool == nullptr || n < 2 * grain || !run_lock.owns_lock()) {
    body(begin, end);
    return;
  }
  const int chunks = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(pool->workers() + 1), n / grain));
  const std::size_t step = (n + chunks - 1) / chunks;
  pool->run(chunks, [&](int c) {
    const std::size_t lo = begin + step * static_cast<std::size_t>(c);
    const std::size_t hi = std::min(end, lo + step);
    if (lo < hi) body(lo, hi);
  });
}

}  // namespace spinlab
