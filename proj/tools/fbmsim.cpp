// fbmsim: tables and figure data for the expected maximum of fBm with small
// Hurst index.
//
//   fbmsim table1   [--h ...] [--n-exp ...] [--samples n] [--method mc|clark] [--force-large-clark]
//   fbmsim table2   iid-limit sample means for n in {1000,...,20000} plus the integral
//   fbmsim table3   same for N = 2^20..2^25
//   fbmsim table4   Borovkov lower bound, e^{1/2H}, Sudakov grid
//   fbmsim figures  plot-ready CSV for the average/max functional figures
//   fbmsim bounds   every bound at each (N, H)
//   fbmsim simulate raw per-replication functional values
//   fbmsim limit    the H -> 0 limit integral
//
// Common flags: --seed, --format csv|json, --out <path>, --serial.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fbm/cli/run.hpp"

int main(int argc, char** argv) {
    using namespace fbm::cli;

    CLI::App app{"Simulation and bounds for the expected maximum of fractional Brownian motion"};
    app.set_help_flag("--help", "print this help");
    app.require_subcommand(1);

    std::vector<double> h_values;
    std::vector<int> n_exponents;
    std::size_t samples = 0;
    std::uint64_t seed = kDefaultSeed;
    std::string format = "csv";
    std::string out_path;
    std::vector<std::string> method_names;
    bool force_large_clark = false;
    bool serial = false;

    for (const char* name : {"table1", "table2", "table3", "table4", "figures", "bounds", "simulate", "limit"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--h", h_values, "Hurst index (repeatable)");
        sub->add_option("--n-exp", n_exponents, "N = 2^k (repeatable)");
        sub->add_option("--samples", samples, "Monte Carlo sample size");
        sub->add_option("--seed", seed, "master seed");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out_path, "output file (default stdout)");
        sub->add_option("--method", method_names, "mc, clark, integral or bounds (repeatable)")
            ->check(CLI::IsMember({"mc", "clark", "integral", "bounds"}));
        sub->add_flag("--force-large-clark", force_large_clark, "run Clark above N = 2^17");
        sub->add_flag("--serial", serial, "run the serial reference schedule");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    RunManifest manifest;
    manifest.command = *parse_command(app.get_subcommands().front()->get_name());
    manifest.h_values = h_values;
    manifest.n_exponents = n_exponents;
    if (samples != 0)
        manifest.sample_size = samples;
    manifest.master_seed = seed;
    manifest.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
    manifest.output_path = out_path;
    for (const auto& name : method_names)
        manifest.methods.push_back(*parse_method(name));
    manifest.force_large_clark = force_large_clark;
    manifest.policy = serial ? fbm::ExecutionPolicy::serial : fbm::ExecutionPolicy::parallel;

    return run(manifest, std::cout, std::cerr);
}
