#include "fbm/cli/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace fbm::cli {

namespace {

std::string cell_text(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>)
                return "";
            else if constexpr (std::is_same_v<T, std::string>)
                return v;
            else if constexpr (std::is_same_v<T, std::int64_t>)
                return std::to_string(v);
            else if constexpr (std::is_same_v<T, double>)
                return format_full(v);
            else if constexpr (std::is_same_v<T, Rounded>)
                return format_fixed(v.value, v.digits);
            else
                return v ? "true" : "false";
        },
        cell);
}

nlohmann::json cell_json(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v))
                    return nullptr;
                return v;
            } else if constexpr (std::is_same_v<T, Rounded>) {
                if (!std::isfinite(v.value))
                    return nullptr;
                // same number the CSV column shows
                const std::string text = format_fixed(v.value, v.digits);
                double parsed = 0.0;
                std::from_chars(text.data(), text.data() + text.size(), parsed);
                return parsed;
            } else {
                return v;
            }
        },
        cell);
}

} // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw std::logic_error("Table::add_row: expected " + std::to_string(columns.size()) + " cells, got " +
                               std::to_string(row.size()));
    rows.push_back(std::move(row));
}

std::string format_full(double value) {
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general);
    return std::string(buf, res.ptr);
}

std::string format_fixed(double value, int digits) {
    if (!std::isfinite(value))
        return format_full(value);
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    std::string out(buf);
    if (out.starts_with("-") && out.find_first_not_of("-0.") == std::string::npos)
        out.erase(0, 1); // no "-0.0000"
    return out;
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c)
            out += ',';
        out += table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c)
                out += ',';
            out += cell_text(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table) {
    std::string out = "[";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            obj[table.columns[c]] = cell_json(table.rows[r][c]);
        out += r ? ",\n" : "\n";
        out += obj.dump();
    }
    out += "\n]\n";
    return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> rows;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            fields.emplace_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
            if (comma == std::string_view::npos)
                break;
            start = comma + 1;
        }
        rows.push_back(std::move(fields));
        pos = eol + 1;
    }
    return rows;
}

} // namespace fbm::cli
