#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace causalkb::io {

/// Splits on tabs when the line contains one, otherwise on runs of spaces.
std::vector<std::string_view> split_fields(std::string_view line);
std::vector<std::string_view> split(std::string_view line, char delim);
std::string_view trim(std::string_view s);

/// Strict full-string parse; throws FormatError naming `context`.
double parse_double(std::string_view field, std::string_view context);

/// Shortest round-trip representation of a double.
std::string format_double(double v);

/// Calls `fn(line_number, line)` for each non-empty line that is not a
/// "#"-prefixed comment. Throws IoError if the file cannot be opened.
void for_each_data_line(const std::filesystem::path& path,
                        const std::function<void(std::size_t, std::string_view)>& fn);

/// Writes through a temporary file in the destination directory and renames
/// it into place, so a failed writer leaves no partial output.
void write_atomically(const std::filesystem::path& path,
                      const std::function<void(std::ostream&)>& writer);

}  // namespace causalkb::io
