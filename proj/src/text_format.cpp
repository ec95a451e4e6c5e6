#include "mpenergy/text_format.hpp"

#include <charconv>
#include <cstdlib>
#include <istream>

#include "mpenergy/errors.hpp"

namespace mpenergy {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

double parse_double(const std::string& s, const std::string& where) {
    const std::string t = trim(s);
    if (t.empty()) throw parse_error(where + ": empty number");
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw parse_error(where + ": bad number '" + s + "'");
    return v;
}

long long parse_int(const std::string& s, const std::string& where) {
    const std::string t = trim(s);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || ptr != t.data() + t.size())
        throw parse_error(where + ": bad integer '" + s + "'");
    return v;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

void for_each_config_line(std::istream& in, const std::string& source_name,
                          const std::function<void(const std::string&, const std::string&,
                                                   const std::string&)>& fn) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = source_name + ":" + std::to_string(lineno);
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw parse_error(where + ": expected 'key = value', got '" + line + "'");
        fn(trim(t.substr(0, eq)), trim(t.substr(eq + 1)), where);
    }
}

} // namespace mpenergy
