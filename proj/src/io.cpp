#include "anyon/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace anyon {

std::string format_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_cell(long long v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%lld", v);
    return buf;
}

std::string to_csv(const Table& t) {
    std::string s;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) s += ',';
        s += t.columns[c];
    }
    s += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) s += ',';
            s += row[c];
        }
        s += '\n';
    }
    return s;
}

std::string to_json(const Table& t) {
    std::string s = "[";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        s += r ? ",\n " : "\n ";
        s += '{';
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (c) s += ", ";
            s += '"';
            s += t.columns[c];
            s += "\": ";
            s += t.rows[r][c];
        }
        s += '}';
    }
    s += "\n]\n";
    return s;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

} // namespace anyon
