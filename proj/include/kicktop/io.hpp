#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kicktop {

inline constexpr std::string_view kVersion = "0.1.0";

// FNV-1a, used for config hashes and output checksums.
std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

// Full-precision (round-trips a double exactly) and display formatting.
std::string fmt_full(double v);
std::string fmt_short(double v);

// Write via a temp file + rename so partial output is never observed.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::optional<std::string> read_file(const std::filesystem::path& path);

// Runs body(i) for i in [0, count) across `threads` workers (serial when
// threads <= 1). Bodies must only touch slot i of shared storage; first
// exception is rethrown after the pool joins.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

int resolve_threads(int requested);

std::vector<std::string> split(std::string_view text, char sep);
std::string trim(std::string_view text);

}  // namespace kicktop
