#include "fbm/cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>

#include "fbm/bounds.hpp"
#include "fbm/clark.hpp"
#include "fbm/errors.hpp"
#include "fbm/functionals.hpp"
#include "fbm/montecarlo.hpp"

namespace fbm::cli {

namespace {

constexpr int kMaxExponent = 31;

std::vector<int> exponent_range(int first, int last) {
    std::vector<int> out(static_cast<std::size_t>(last - first + 1));
    std::iota(out.begin(), out.end(), first);
    return out;
}

std::vector<double> hurst_values(const RunManifest& m) {
    if (!m.h_values.empty())
        return m.h_values;
    switch (m.command) {
    case Command::table1:
        return {0.09, 0.01, 0.0013, 0.0001};
    case Command::table4:
    case Command::bounds:
        return {0.5, 0.09, 0.01, 0.0013, 0.0001};
    case Command::figures:
        return default_hurst_grid();
    case Command::simulate:
        return {0.5};
    default:
        return {};
    }
}

std::vector<int> exponents(const RunManifest& m) {
    if (!m.n_exponents.empty())
        return m.n_exponents;
    switch (m.command) {
    case Command::table3:
        return exponent_range(20, 25);
    case Command::bounds:
        return {20};
    case Command::limit:
        return exponent_range(8, 25);
    case Command::simulate:
        return {10};
    default:
        return exponent_range(8, 19);
    }
}

std::vector<std::size_t> sample_sizes(const RunManifest& m) {
    if (m.sample_size)
        return {*m.sample_size};
    if (m.command == Command::table2)
        return {1000, 5000, 10000, 15000, 20000};
    return {1000};
}

std::vector<Method> applicable_methods(Command c) {
    switch (c) {
    case Command::table1:
        return {Method::mc, Method::clark};
    case Command::table2:
    case Command::table3:
        return {Method::mc, Method::integral};
    case Command::table4:
    case Command::bounds:
        return {Method::bounds};
    case Command::limit:
        return {Method::integral};
    case Command::figures:
    case Command::simulate:
        return {Method::mc};
    }
    return {};
}

std::vector<Method> methods(const RunManifest& m) {
    return m.methods.empty() ? applicable_methods(m.command) : m.methods;
}

bool wants(const std::vector<Method>& ms, Method x) {
    return std::find(ms.begin(), ms.end(), x) != ms.end();
}

std::uint64_t points(int exponent) {
    return std::uint64_t{1} << exponent;
}

Cell optional_cell(double v, bool present) {
    return present ? Cell{v} : Cell{};
}

ExperimentConfig fbm_config(const RunManifest& m, std::uint64_t n, double h, std::size_t samples,
                            std::vector<FunctionalKind> kinds) {
    ExperimentConfig c{PathGrid(static_cast<std::size_t>(n), h)};
    c.sample_size = samples;
    c.master_seed = m.master_seed;
    c.functionals = std::move(kinds);
    c.policy = m.policy;
    return c;
}

Table table1(const RunManifest& m, std::ostream& log) {
    Table t{{"n_exp", "N", "H", "method", "samples", "value", "value_full", "std_error", "ci95_low", "ci95_high",
             "status"}};
    const auto ms = methods(m);
    const std::size_t samples = sample_sizes(m).front();
    ClarkOptions clark_options;
    clark_options.allow_large = m.force_large_clark;
    clark_options.policy = m.policy;
    for (int e : exponents(m)) {
        const std::uint64_t n = points(e);
        for (double h : hurst_values(m)) {
            if (wants(ms, Method::mc)) {
                const auto res = run_fbm_experiment(fbm_config(m, n, h, samples, {FunctionalKind::max}));
                const SampleSummary& s = res.summaries.at(FunctionalKind::max);
                t.add_row({std::int64_t{e}, static_cast<std::int64_t>(n), h, std::string("mc"),
                           static_cast<std::int64_t>(samples), Rounded{s.mean}, s.mean, s.std_error(), s.ci95_low,
                           s.ci95_high, std::string("ok")});
                log << "table1 mc N=2^" << e << " H=" << h << " mean=" << s.mean << "\n";
            }
            if (wants(ms, Method::clark)) {
                if (!clark_size_allowed(static_cast<std::size_t>(n), clark_options)) {
                    t.add_row({std::int64_t{e}, static_cast<std::int64_t>(n), h, std::string("clark"), Cell{},
                               Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, std::string("skipped")});
                    log << "table1 clark N=2^" << e << " H=" << h << " skipped (size guard)\n";
                    continue;
                }
                const ClarkResult r = clark_expected_max(PathGrid(static_cast<std::size_t>(n), h), clark_options);
                t.add_row({std::int64_t{e}, static_cast<std::int64_t>(n), h, std::string("clark"), Cell{},
                           Rounded{r.expected_max}, r.expected_max, Cell{}, Cell{}, Cell{}, std::string("ok")});
                log << "table1 clark N=2^" << e << " H=" << h << " value=" << r.expected_max << "\n";
            }
        }
    }
    return t;
}

// Sample sizes share replication streams, so each smaller n is a prefix of
// the largest run.
Table iid_limit_table(const RunManifest& m, std::ostream& log) {
    Table t{{"n_exp", "N", "method", "samples", "value", "value_full", "std_error", "ci95_low", "ci95_high"}};
    const auto ms = methods(m);
    auto sizes = sample_sizes(m);
    const std::size_t largest = *std::max_element(sizes.begin(), sizes.end());
    for (int e : exponents(m)) {
        const std::uint64_t n = points(e);
        if (wants(ms, Method::mc)) {
            const std::vector<double> all = iid_limit_samples(n, largest, m.master_seed, m.policy);
            for (std::size_t size : sizes) {
                const SampleSummary s = summarize(std::span<const double>(all).first(size));
                t.add_row({std::int64_t{e}, static_cast<std::int64_t>(n), std::string("mc"),
                           static_cast<std::int64_t>(size), Rounded{s.mean}, s.mean, s.std_error(), s.ci95_low,
                           s.ci95_high});
                log << to_string(m.command) << " mc N=2^" << e << " n=" << size << " mean=" << s.mean << "\n";
            }
        }
        if (wants(ms, Method::integral)) {
            const double v = limit_integral(n);
            t.add_row({std::int64_t{e}, static_cast<std::int64_t>(n), std::string("integral"), Cell{}, Rounded{v}, v,
                       Cell{}, Cell{}, Cell{}});
            log << to_string(m.command) << " integral N=2^" << e << " value=" << v << "\n";
        }
    }
    return t;
}

Table table4(const RunManifest& m, std::ostream& log) {
    Table t{{"quantity", "H", "n_exp", "N", "value", "value_full", "log10_value"}};
    const auto hs = hurst_values(m);
    for (double h : hs) {
        const double lower = borovkov_bounds(h).lower;
        t.add_row({std::string("borovkov_lower"), h, Cell{}, Cell{}, Rounded{lower}, lower, std::log10(lower)});
        const double log_argmax = 1.0 / (2.0 * h);
        const double argmax = std::exp(log_argmax);
        const bool finite = std::isfinite(argmax);
        t.add_row({std::string("sudakov_argmax"), h, Cell{}, Cell{}, !finite ? Cell{} : argmax < 1e6 ? Cell{Rounded{argmax}} : Cell{argmax},
                   optional_cell(argmax, finite), log_argmax / std::log(10.0)});
    }
    for (int e : exponents(m)) {
        const std::uint64_t n = points(e);
        for (double h : hs) {
            const double v = sudakov_lower_bound(static_cast<double>(n), h);
            t.add_row({std::string("sudakov_lower"), h, std::int64_t{e}, static_cast<std::int64_t>(n), Rounded{v}, v,
                       std::log10(v)});
        }
    }
    log << "table4 " << t.rows.size() << " rows\n";
    return t;
}

Table bounds_table(const RunManifest& m, std::ostream& log) {
    Table t{{"H", "n_exp", "N", "quantity", "value", "value_full", "valid"}};
    for (int e : exponents(m)) {
        const std::uint64_t n = points(e);
        for (double h : hurst_values(m)) {
            const BoundsReport r = bounds_report(n, h);
            auto row = [&](const char* name, double v, Cell valid = Cell{true}) {
                t.add_row({h, std::int64_t{e}, static_cast<std::int64_t>(n), std::string(name), Rounded{v}, v, valid});
            };
            row("borovkov_lower", r.borovkov_lower);
            row("borovkov_upper", r.borovkov_upper);
            row("sudakov_lower", r.sudakov_lower);
            if (r.delta_upper)
                row("delta_upper", r.delta_upper->value, Cell{r.delta_upper->valid});
            else
                t.add_row({h, std::int64_t{e}, static_cast<std::int64_t>(n), std::string("delta_upper"), Cell{},
                           Cell{}, Cell{false}});
            row("limit_integral", r.limit_integral);
            row("limit_rate_bound", r.limit_rate);
            row("delta_lower", r.delta_lower);
            row("relative_error_lower", r.relative_error_lower);
            log << "bounds N=2^" << e << " H=" << h << "\n";
        }
    }
    return t;
}

Table limit_table(const RunManifest& m, std::ostream& log) {
    Table t{{"n_exp", "N", "value", "value_full", "erfinv_form", "tail_form"}};
    for (int e : exponents(m)) {
        const std::uint64_t n = points(e);
        const LimitIntegral li = limit_integral_checked(n);
        t.add_row({std::int64_t{e}, static_cast<std::int64_t>(n), Rounded{li.value}, li.value, li.erfinv_form,
                   li.tail_form});
        log << "limit N=2^" << e << " value=" << li.value << "\n";
    }
    return t;
}

Table figures_table(const RunManifest& m, std::ostream& log) {
    Table t{{"figure", "H", "n_exp", "N", "samples", "statistic", "statistic_full", "theoretical", "ci95_low",
             "ci95_high"}};
    const std::size_t samples = sample_sizes(m).front();
    for (double h : hurst_values(m)) {
        for (int e : exponents(m)) {
            const std::uint64_t n = points(e);
            const auto res = run_fbm_experiment(
                fbm_config(m, n, h, samples, {FunctionalKind::max, FunctionalKind::average}));
            const std::vector<double>& avg = res.samples.at(FunctionalKind::average);
            const SampleSummary& avg_summary = res.summaries.at(FunctionalKind::average);
            const SampleSummary& max_summary = res.summaries.at(FunctionalKind::max);
            const double rn = std::sqrt(static_cast<double>(samples));

            // mean of the average functional against 0
            const double band1 = kZ95 * std::sqrt(avg_summary.variance) / rn;
            t.add_row({std::int64_t{1}, h, std::int64_t{e}, static_cast<std::int64_t>(n),
                       static_cast<std::int64_t>(samples), Rounded{avg_summary.mean}, avg_summary.mean, 0.0, -band1,
                       band1});

            // sample variance against the exact second moment
            std::vector<double> centered(avg.size());
            for (std::size_t i = 0; i < avg.size(); ++i)
                centered[i] = (avg[i] - avg_summary.mean) * (avg[i] - avg_summary.mean);
            const double theory = average_second_moment_theoretical(PathGrid(static_cast<std::size_t>(n), h));
            const double band2 = kZ95 * std::sqrt(summarize(centered).variance) / rn;
            t.add_row({std::int64_t{2}, h, std::int64_t{e}, static_cast<std::int64_t>(n),
                       static_cast<std::int64_t>(samples), Rounded{avg_summary.variance}, avg_summary.variance, theory,
                       theory - band2, theory + band2});

            // mean of the max functional against the Borovkov lower bound
            t.add_row({std::int64_t{3}, h, std::int64_t{e}, static_cast<std::int64_t>(n),
                       static_cast<std::int64_t>(samples), Rounded{max_summary.mean}, max_summary.mean,
                       borovkov_bounds(h).lower, max_summary.ci95_low, max_summary.ci95_high});
            log << "figures N=2^" << e << " H=" << h << " max_mean=" << max_summary.mean << "\n";
        }
    }
    return t;
}

Table simulate_table(const RunManifest& m, std::ostream& log) {
    Table t{{"H", "n_exp", "N", "replication", "max", "average"}};
    const std::size_t samples = sample_sizes(m).front();
    for (double h : hurst_values(m)) {
        for (int e : exponents(m)) {
            const std::uint64_t n = points(e);
            const auto res = run_fbm_experiment(
                fbm_config(m, n, h, samples, {FunctionalKind::max, FunctionalKind::average}));
            const auto& mx = res.samples.at(FunctionalKind::max);
            const auto& av = res.samples.at(FunctionalKind::average);
            for (std::size_t r = 0; r < samples; ++r)
                t.add_row({h, std::int64_t{e}, static_cast<std::int64_t>(n), static_cast<std::int64_t>(r), mx[r], av[r]});
            for (const auto& [kind, s] : res.summaries) {
                log << "simulate N=2^" << e << " H=" << h << " " << to_string(kind) << " mean=" << s.mean
                    << " se=" << s.std_error() << " ci95=[" << s.ci95_low << ", " << s.ci95_high << "]\n";
            }
        }
    }
    return t;
}

} // namespace

std::optional<Command> parse_command(std::string_view name) {
    for (Command c : {Command::table1, Command::table2, Command::table3, Command::table4, Command::figures,
                      Command::bounds, Command::simulate, Command::limit}) {
        if (to_string(c) == name)
            return c;
    }
    return std::nullopt;
}

std::string_view to_string(Command command) noexcept {
    switch (command) {
    case Command::table1:
        return "table1";
    case Command::table2:
        return "table2";
    case Command::table3:
        return "table3";
    case Command::table4:
        return "table4";
    case Command::figures:
        return "figures";
    case Command::bounds:
        return "bounds";
    case Command::simulate:
        return "simulate";
    case Command::limit:
        return "limit";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    for (Method x : {Method::mc, Method::clark, Method::integral, Method::bounds}) {
        if (to_string(x) == name)
            return x;
    }
    return std::nullopt;
}

std::string_view to_string(Method method) noexcept {
    switch (method) {
    case Method::mc:
        return "mc";
    case Method::clark:
        return "clark";
    case Method::integral:
        return "integral";
    case Method::bounds:
        return "bounds";
    }
    return "unknown";
}

std::vector<double> default_hurst_grid() {
    std::vector<double> out;
    for (int i = 0; i <= 24; ++i)
        out.push_back(1e-4 * (1 + 4 * i));
    for (int i = 1; i <= 9; ++i)
        out.push_back(0.01 * i);
    return out;
}

void validate(const RunManifest& m) {
    for (double h : m.h_values) {
        if (!(h > 0.0 && h < 1.0))
            throw UsageError("--h values must lie in (0,1), got " + format_full(h));
    }
    for (int e : m.n_exponents) {
        if (e < 0 || e > kMaxExponent)
            throw UsageError("--n-exp values must lie in [0, 31], got " + std::to_string(e));
    }
    if (m.sample_size && *m.sample_size < 2)
        throw UsageError("--samples must be at least 2");
    const auto allowed = applicable_methods(m.command);
    for (Method x : m.methods) {
        if (!wants(allowed, x))
            throw UsageError("--method " + std::string(to_string(x)) + " does not apply to " +
                             std::string(to_string(m.command)));
    }
}

Table build_table(const RunManifest& m, std::ostream& log) {
    switch (m.command) {
    case Command::table1:
        return table1(m, log);
    case Command::table2:
    case Command::table3:
        return iid_limit_table(m, log);
    case Command::table4:
        return table4(m, log);
    case Command::figures:
        return figures_table(m, log);
    case Command::bounds:
        return bounds_table(m, log);
    case Command::simulate:
        return simulate_table(m, log);
    case Command::limit:
        return limit_table(m, log);
    }
    throw UsageError("unknown command");
}

int run(const RunManifest& manifest, std::ostream& out, std::ostream& log) {
    Table table;
    try {
        validate(manifest);
        table = build_table(manifest, log);
    } catch (const UsageError& e) {
        log << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalError& e) {
        log << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {
        log << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    const std::string text = manifest.format == OutputFormat::json ? to_json(table) : to_csv(table);
    if (manifest.output_path.empty()) {
        out << text;
        out.flush();
        return kExitOk;
    }
    std::ofstream file(manifest.output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        log << "usage error: cannot open " << manifest.output_path << " for writing\n";
        return kExitUsage;
    }
    file << text;
    if (!file) {
        log << "usage error: failed writing " << manifest.output_path << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

} // namespace fbm::cli
