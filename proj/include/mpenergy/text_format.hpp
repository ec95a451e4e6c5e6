#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace mpenergy {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

/// strtod with full-string validation; `where` goes into the error message.
double parse_double(const std::string& s, const std::string& where);
long long parse_int(const std::string& s, const std::string& where);

std::string trim(const std::string& s);
std::vector<std::string> split_csv_row(const std::string& line);

/// Walks `key = value` lines, skipping blanks and '#' comments.
/// Calls fn(key, value, "source:line").
void for_each_config_line(std::istream& in, const std::string& source_name,
                          const std::function<void(const std::string&, const std::string&,
                                                   const std::string&)>& fn);

} // namespace mpenergy
