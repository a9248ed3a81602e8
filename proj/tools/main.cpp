// Command line front end: scenario validation, execution and the constant
// table. Exit codes: 0 success, 1 diagnostic gate failure, 2 invalid input.

#include <chrono>
#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "infospace/report.hpp"

namespace {

int run_constants_cmd(const std::string& units) {
    const auto mode =
        units == "natural" ? infospace::UnitMode::NATURAL : infospace::UnitMode::SI;
    const auto k = infospace::derive_constants(infospace::codata2002(), mode);
    std::cout << infospace::cli::constants_table_json(k);
    return 0;
}

int run_validate_cmd(const std::string& path) {
    try {
        infospace::cli::parse_scenario_file(path);
    } catch (const infospace::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    std::cout << "scenario ok: " << path << "\n";
    return 0;
}

int run_run_cmd(const std::string& path, const std::string& units_override,
                const std::string& out_dir, bool csv) {
    using clock = std::chrono::steady_clock;
    try {
        infospace::cli::Scenario scenario = infospace::cli::parse_scenario_file(path);
        if (units_override == "si") scenario.unit_mode = infospace::UnitMode::SI;
        if (units_override == "natural") scenario.unit_mode = infospace::UnitMode::NATURAL;

        const auto t0 = clock::now();
        const infospace::cli::RunReport report = infospace::cli::run(scenario);
        const auto t1 = clock::now();

        infospace::cli::EmitOptions opts;
        opts.out_dir = out_dir;
        opts.force_csv = csv;
        for (const auto& p : infospace::cli::emit(report, opts)) {
            std::cerr << "wrote " << p << "\n";
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        std::cerr << "wall_time_ms " << ms << "\n";
        for (const auto& g : report.gates) {
            std::cerr << "gate " << g.name << ": " << (g.passed ? "pass" : "FAIL") << " (value "
                      << g.value << ", threshold " << g.threshold << ")\n";
        }
        return report.all_gates_passed() ? 0 : 1;
    } catch (const infospace::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerics for a pseudo-Euclidean information space"};
    app.require_subcommand(1);

    std::string units = "si";
    std::string out_dir = ".";
    std::string scenario_path;
    bool csv = false;
    long long seed = 0;  // reserved for future stochastic modes

    auto* constants = app.add_subcommand("constants", "print the derived constant table");
    constants->add_option("--units", units, "si|natural")->check(CLI::IsMember({"si", "natural"}));

    auto* runcmd = app.add_subcommand("run", "execute a scenario file");
    runcmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
    std::string run_units;
    runcmd->add_option("--units", run_units, "override the scenario unit mode")
        ->check(CLI::IsMember({"si", "natural"}));
    runcmd->add_option("--out", out_dir, "output directory");
    runcmd->add_flag("--csv", csv, "force CSV dumps on");
    runcmd->add_option("--seed", seed, "reserved");

    auto* validate = app.add_subcommand("validate", "validate a scenario file");
    validate->add_option("scenario", scenario_path, "scenario JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    if (constants->parsed()) return run_constants_cmd(units);
    if (validate->parsed()) return run_validate_cmd(scenario_path);
    return run_run_cmd(scenario_path, run_units, out_dir, csv);
}
