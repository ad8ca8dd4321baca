#pragma once

// Internal helpers shared by the CSV readers and writers.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace texclass::csv {

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);
/// Throws SchemaMismatch on anything that is not a complete number.
double parse_double(std::string_view text);

/// Quotes a field only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);
std::vector<std::string> split_line(std::string_view line);

/// Reads the file as LF-separated lines (a trailing CR is stripped). The
/// final empty line after the last LF is dropped.
std::vector<std::string> read_lines(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace texclass::csv
