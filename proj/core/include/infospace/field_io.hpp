#pragma once

#include <string>

#include "infospace/tensor_field.hpp"

namespace infospace {

/// Writes <base>.json (rank, extents, spacing, origin, variance mask) and
/// <base>.csv, one row per site with the 4^rank components, sites major,
/// index tuples read big-endian base 4.
void save_field(const TensorField& field, const std::string& base_path);

/// Inverse of save_field.
TensorField load_field(const std::string& base_path);

}  // namespace infospace
