#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace prereq::csv {

using Row = std::vector<std::string>;

/// Reads RFC 4180 style records: comma separated, double-quote escaping,
/// LF or CRLF line endings. Blank lines are skipped. A leading UTF-8 BOM is
/// dropped.
std::vector<Row> read(std::istream& in);

/// Quotes a field only when it contains a comma, quote or line break.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const Row& row);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Fixed-point text with `decimals` digits after the point.
std::string format_fixed(double value, int decimals);

/// Strict parse of a whole field as a double (leading/trailing spaces
/// allowed). Returns false on anything else, including inf/nan.
bool parse_double(std::string_view text, double& out);

std::string_view trim(std::string_view text);

}  // namespace prereq::csv
