#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fbm::cli {

/// A double printed with a fixed number of decimals.
struct Rounded {
    double value;
    int digits = 4;
};

/// monostate is an empty CSV cell / JSON null.
using Cell = std::variant<std::monostate, std::string, std::int64_t, double, Rounded, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows{};

    void add_row(std::vector<Cell> row);
};

/// Shortest decimal string that parses back to exactly `value`.
std::string format_full(double value);

/// Fixed-point with `digits` decimals, '.' as the decimal point.
std::string format_fixed(double value, int digits);

/// Header row plus one line per row, comma separated, LF line endings.
std::string to_csv(const Table& table);

/// JSON array with one object per row (one row per line), keys = column names.
std::string to_json(const Table& table);

/// Minimal reader for what to_csv emits (no quoting). First row is the header.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

} // namespace fbm::cli
