#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace canfis {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_real(double value);

/// Parses a whole field as a double; returns false on any trailing garbage.
bool parse_real(std::string_view text, double& value);

/// Splits one CSV line on commas, trimming surrounding whitespace and a
/// trailing carriage return. No quoting support; none of our files need it.
std::vector<std::string> split_csv_line(std::string_view line);

/// Writes `content` to `path`, creating parent directories. Throws FileError.
void write_text_file(const std::filesystem::path& path, std::string_view content);

/// Reads a whole file. Throws FileError.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace canfis
