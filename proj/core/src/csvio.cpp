#include "hmlab/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace hmlab::csvio {

std::vector<std::string>& Table::new_row() {
    rows.emplace_back();
    rows.back().reserve(columns.size());
    return rows.back();
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string quote(const std::string& s) {
    bool need = false;
    for (char c : s)
        if (c == ',' || c == '"' || c == '\n') need = true;
    if (!need) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string to_string(const Table& t) {
    std::string out;
    for (size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += quote(t.columns[i]);
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += quote(row[i]);
        }
        out += '\n';
    }
    return out;
}

void write(const Table& t, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("csv: cannot open " + path + " for writing");
    f << to_string(t);
    if (!f) throw std::runtime_error("csv: write failed for " + path);
}

} // namespace hmlab::csvio
