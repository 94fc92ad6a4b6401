#pragma once

#include <span>
#include <string_view>

#include "fbm/grid.hpp"

namespace fbm {

enum class FunctionalKind { max, average };

std::string_view to_string(FunctionalKind kind) noexcept;

/// max_i B^H(i/N). Negative values are kept as-is. Throws on an empty path.
double max_functional(std::span<const double> path);

/// (1/N) sum_i B^H(i/N). Throws on an empty path.
double average_functional(std::span<const double> path);

/// E[((1/N) sum_i B^H(i/N))^2] = N^{-(2H+2)} sum_{i=1}^N i^{2H+1}.
/// Summed with compensation in long double.
double average_second_moment_theoretical(const PathGrid& grid);

/// N -> infinity limit of the above, 1/(2H+2).
double average_second_moment_limit(double hurst);

} // namespace fbm
