#include "platgenus/csv.hpp"

#include <stdexcept>

namespace platgenus {

std::string csv_escape(std::string_view cell) {
    const bool needs_quotes = cell.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quotes) {
        return std::string(cell);
    }
    std::string out;
    out.reserve(cell.size() + 2);
    out.push_back('"');
    for (char c : cell) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string csv_join(const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) {
            out.push_back(',');
        }
        out += csv_escape(cells[i]);
    }
    return out;
}

std::vector<std::string> csv_split(std::string_view line) {
    std::vector<std::string> cells;
    std::string current;
    bool quoted = false;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"') {
            if (!current.empty()) {
                throw std::invalid_argument("csv: quote inside unquoted cell");
            }
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
        ++i;
    }
    if (quoted) {
        throw std::invalid_argument("csv: unterminated quote");
    }
    cells.push_back(std::move(current));
    return cells;
}

std::vector<std::vector<std::string>> csv_parse(std::string_view document) {
    std::vector<std::vector<std::string>> rows;
    std::size_t pos = 0;
    while (pos < document.size()) {
        std::size_t nl = document.find('\n', pos);
        if (nl == std::string_view::npos) {
            nl = document.size();
        }
        rows.push_back(csv_split(document.substr(pos, nl - pos)));
        pos = nl + 1;
    }
    return rows;
}

std::string csv_emit(const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (const auto& row : rows) {
        out += csv_join(row);
        out.push_back('\n');
    }
    return out;
}

} // namespace platgenus
