#pragma once

#include <array>

#include "infospace/tensor_field.hpp"

namespace infospace {

/// Rank-4 totally antisymmetric symbol with eps^{0123} = +1, stored as the
/// 24 nonzero (permutation, sign) entries. Index raising goes through the
/// metric, so eps_{0123} = -1.
struct LeviCivita {
    struct Entry {
        std::array<int, 4> idx;
        double sign;
    };
    static const std::array<Entry, 24>& entries();
    /// Full 256-entry lookup: eps^{abcd} (0 off the permutations).
    static double at(int a, int b, int c, int d);
};

/// Plain coordinate derivative d/dx^axis applied componentwise: central
/// second-order differences in the interior, one-sided second-order stencils
/// at the boundary. Requires >= 3 points along the axis.
///
/// The covariant derivative slot stores exactly these plain values;
/// metric signs enter only through raise_lower.
TensorField derivative(const TensorField& field, int axis);

/// Plain second derivative d^2/d(x^axis)^2, central in the interior,
/// one-sided at the boundary (second order where >= 4 points exist).
TensorField second_derivative(const TensorField& field, int axis);

/// Contraction of the derivative with one index slot of the field,
/// scaled by lambda_scale. For a contravariant slot this is the plain
/// divergence sum_a d_a X^{..a..}; a covariant slot is raised through the
/// metric first. Result rank is field rank - 1. Throws rank_error for
/// rank-0 input.
TensorField four_divergence(const TensorField& field, int slot, double lambda_scale = 1.0);

/// lambda_c^2 (d0^2 - d1^2 - d2^2 - d3^2) applied componentwise.
TensorField dalembertian(const TensorField& field, double lambda_c = 1.0);

/// Scalar gradient with the derivative index appended as a covariant slot
/// (plain values). General tensors get the same treatment, appending the
/// new slot last.
TensorField gradient_append(const TensorField& field);

/// Antisymmetric field strength G^{ab} = d^a A^b - d^b A^a from a
/// contravariant rank-1 potential; antisymmetric by construction.
TensorField field_tensor(const TensorField& potential);

/// Dual via the Levi-Civita symbol: ~G^{ab} = 1/2 eps^{abrs} G_{rs}.
/// Requires an antisymmetric contravariant rank-2 input (checked to a
/// scaled 1e-12).
TensorField dual_tensor(const TensorField& g);

/// Text-deformation operator: 1/2 * lambda_c * d_nu applied componentwise,
/// the derivative index appended as the last covariant slot.
TensorField heterogeneity(const TensorField& field, double lambda_c = 1.0);

/// Largest absolute component over interior sites (convergence studies
/// evaluate interior points only).
double max_abs_interior(const TensorField& field);
double max_abs(const TensorField& field);

}  // namespace infospace
