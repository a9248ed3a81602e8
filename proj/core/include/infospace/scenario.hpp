#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "infospace/dynamics.hpp"
#include "infospace/generators.hpp"
#include "infospace/path_integral.hpp"

namespace infospace::cli {

enum class Mode {
    constants,
    kinematics,
    emotion,
    free_transfer,
    interaction,
    minimize_action,
    maxwell_check,
};

const char* mode_name(Mode m);

/// A tensor-field source: an analytic generator or a serialized-field
/// reference (base path of a .json/.csv pair).
struct FieldSource {
    std::variant<FieldGenerator, std::string> source;
    TensorField realize(const Lattice4& lattice) const;
};

struct KinematicsParams {
    Vec3 beta{0.0, 0.0, 0.0};
    double dt = 1.0;
    FourVector x{};
    FourVector raw_mean{};
    double mean_speed_sq = 1.0;
};

struct EmotionParams {
    int m = 1;
    bool require_bound = false;  // turn |q| <= 1 violations into a gate
};

struct TransferParams {
    FourVector x_a{};
    FourVector x_b{};
    double q_gie = 1.0;
    dynamics::InteractionParams interaction{};
    dynamics::PotentialSpec potential{};
    bool position_dependent = false;
    pathint::MomentumGrid grid{};
    std::optional<Lattice4> end_lattice{};
    double mean_speed_sq = 0.0;
};

struct MinimizeParams {
    FourVector from{};
    FourVector to{};
    int segments = 8;
    bool interacting = false;
    double q_gie = 1.0;                    // free case
    dynamics::InteractionParams interaction{};
    dynamics::PotentialSpec potential{};
    bool flip_action_sign = false;
    dynamics::OptimizerOptions optimizer{};
};

struct OutputOptions {
    std::string json_path = "report.json";
    bool csv = false;
    bool stats_only = false;
};

struct Scenario {
    int schema_version = 1;
    Mode mode = Mode::constants;
    UnitMode unit_mode = UnitMode::SI;
    std::optional<PhysicalConstants> constants_override;
    std::optional<Lattice4> lattice;
    std::map<std::string, FieldSource> fields;  // T, D, n, A, rho, j
    KinematicsParams kinematics{};
    EmotionParams emotion{};
    TransferParams transfer{};
    MinimizeParams minimize{};
    OutputOptions output{};
};

/// Parses and validates a scenario document. Violations are collected and
/// reported together, each with its JSON path; any violation raises
/// ErrorCode::scenario_error.
Scenario parse_scenario(const std::string& text);

/// Convenience: read the file then parse.
Scenario parse_scenario_file(const std::string& path);

}  // namespace infospace::cli
