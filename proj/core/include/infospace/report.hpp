#pragma once

#include <string>
#include <vector>

#include "infospace/scenario.hpp"

namespace infospace::cli {

/// One named diagnostic gate; every gate corresponds to an invariant of the
/// module that produced the result.
struct GateResult {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
};

struct CsvFile {
    std::string name;
    std::string content;
};

/// A fully rendered run: the deterministic JSON text (identical scenarios
/// produce byte-identical text), the gate list and any CSV dumps. Wall time
/// is deliberately not part of the serialized report.
struct RunReport {
    std::string json_text;
    std::vector<GateResult> gates;
    std::vector<CsvFile> csv_files;
    OutputOptions output;

    bool all_gates_passed() const {
        for (const auto& g : gates)
            if (!g.passed) return false;
        return true;
    }
};

/// Executes the scenario's mode and assembles the report.
RunReport run(const Scenario& scenario);

struct EmitOptions {
    std::string out_dir = ".";
    bool force_csv = false;  // CLI --csv overrides the scenario setting
};

/// Writes the JSON report and optional CSV dumps. Returns the paths written.
std::vector<std::string> emit(const RunReport& report, const EmitOptions& opts);

/// The constant table as deterministic JSON, for the `constants` subcommand.
std::string constants_table_json(const InfoConstants& k);

/// Library version string embedded in reports.
const char* tool_version();

}  // namespace infospace::cli
