#pragma once

#include <string>
#include <vector>

namespace anyon {

// ---------------------------------------------------------------------------
// Table emission for the command-line tools
//
// Cells are formatted once, at insertion: doubles with "%.17g" (which
// round-trips IEEE doubles exactly), integers as plain decimals. Emission is
// then pure string assembly, so a rerun with the same inputs produces
// byte-identical output.
// ---------------------------------------------------------------------------

std::string format_cell(double v);
std::string format_cell(long long v);
inline std::string format_cell(int v) { return format_cell(static_cast<long long>(v)); }

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    explicit Table(std::vector<std::string> cols) : columns(std::move(cols)) {}

    template <typename... Ts>
    void add_row(Ts... cells) {
        rows.push_back({format_cell(cells)...});
    }
};

// Header line plus one line per row, comma-separated, '\n' terminated.
std::string to_csv(const Table& t);

// JSON array with one {column: value} object per row; cell text is embedded
// verbatim as the number literal.
std::string to_json(const Table& t);

// Writes to the path, or to stdout when the path is empty or "-". Throws
// std::runtime_error when the file cannot be opened.
void write_text(const std::string& path, const std::string& text);

} // namespace anyon
