#pragma once

#include <string>
#include <vector>

namespace hmlab::csvio {

/// Deterministic CSV writing: fixed column order, "%.12g" numbers, RFC-style
/// quoting for strings containing separators or quotes.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::vector<std::string>& new_row();
};

std::string format_number(double x);
std::string quote(const std::string& s);
void write(const Table& t, const std::string& path);
std::string to_string(const Table& t);

} // namespace hmlab::csvio
