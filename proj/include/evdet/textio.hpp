#pragma once

#include <optional>
#include <string>
#include <vector>

namespace evdet::textio {

/// Decimal formatting with enough digits to round-trip a double exactly.
std::string format_double(double value);

/// Hex-float formatting; parse_double reads it back bit-exactly.
std::string format_double_hex(double value);

/// Full-token strtod parse; nullopt if the token is empty or has trailing
/// garbage. Accepts inf/nan spellings (callers decide finiteness policy).
std::optional<double> parse_double(const std::string& token);

std::string trim(const std::string& s);

std::vector<std::string> split_csv_line(const std::string& line);

/// All lines of a text file, trailing '\r' stripped. Throws Error(Io).
std::vector<std::string> read_lines(const std::string& path);

void write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

} // namespace evdet::textio
