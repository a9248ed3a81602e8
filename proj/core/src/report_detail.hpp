#pragma once

// Internal helpers shared between report.cpp and run.cpp; not installed.

#include <string>

#include <json.hpp>

namespace infospace::cli::detail {

/// Renders ordered JSON with fixed 17-significant-digit floats and stable
/// key order; identical documents produce identical bytes.
std::string dump_deterministic(const nlohmann::ordered_json& j);

std::string format_g17(double v);

}  // namespace infospace::cli::detail
