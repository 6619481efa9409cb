#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spinlab::cli {

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

// "<sha256>  <name>" per line, in the given order.
void write_manifest(const std::filesystem::path& dir, const std::vector<std::string>& files);
std::vector<std::pair<std::string, std::string>> read_manifest(const std::filesystem::path& path);

}  // namespace spinlab::cli
