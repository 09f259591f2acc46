#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace annealbench {

/// Shortest round-trip decimal form of a double.
std::string format_real(double v);

double parse_real(std::string_view token);
std::int64_t parse_int(std::string_view token);

/// Splits on whitespace and commas.
std::vector<std::string> split_ws(std::string_view line);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// FNV-1a of the bytes, hex encoded.
std::string hash_hex(std::string_view bytes);

}  // namespace annealbench
