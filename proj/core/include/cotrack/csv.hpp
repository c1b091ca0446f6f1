#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cotrack::csv {

/// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double v);

/// Splits one CSV line on commas. No quoting support; none of our formats
/// need it.
std::vector<std::string_view> split(std::string_view line);

/// Parses a full field as a double / integer. Returns false on trailing
/// garbage or an empty field.
bool parse_double(std::string_view field, double& out);
bool parse_int(std::string_view field, long long& out);

/// Reads a whole file. Throws std::runtime_error if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Writes `contents` to a sibling temporary and renames it over `path`, so
/// readers see either the old file or the complete new one.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace cotrack::csv
