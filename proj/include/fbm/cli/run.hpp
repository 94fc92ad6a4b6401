#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fbm/cli/table.hpp"
#include "fbm/kernels.hpp"

namespace fbm::cli {

enum class Command { table1, table2, table3, table4, figures, bounds, simulate, limit };
enum class OutputFormat { csv, json };
enum class Method { mc, clark, integral, bounds };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

inline constexpr std::uint64_t kDefaultSeed = 20160704;

/// Everything one CLI invocation needs. Empty lists mean "use the
/// command's default grid".
struct RunManifest {
    Command command = Command::limit;
    std::vector<double> h_values;
    std::vector<int> n_exponents;
    std::optional<std::size_t> sample_size;
    std::uint64_t master_seed = kDefaultSeed;
    std::string output_path; // empty: write to the output stream
    OutputFormat format = OutputFormat::csv;
    std::vector<Method> methods;
    bool force_large_clark = false;
    ExecutionPolicy policy = ExecutionPolicy::parallel;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command command) noexcept;
std::optional<Method> parse_method(std::string_view name);
std::string_view to_string(Method method) noexcept;

/// Hurst values of the simulation grid: {1e-4 (1+4i), i=0..24} U {0.01 i, i=1..9}.
std::vector<double> default_hurst_grid();

/// Throws UsageError on H outside (0,1), exponents outside [0,31], fewer than
/// two samples, or methods that do not apply to the command.
void validate(const RunManifest& manifest);

/// Builds the command's output table; one progress line per cell goes to `log`.
Table build_table(const RunManifest& manifest, std::ostream& log);

/// validate + build_table + write. Output goes to manifest.output_path, or to
/// `out` when the path is empty. Returns kExitOk, kExitUsage or kExitNumerical.
int run(const RunManifest& manifest, std::ostream& out, std::ostream& log);

} // namespace fbm::cli
