#pragma once

#include <array>

#include "infospace/constants.hpp"
#include "infospace/four_vector.hpp"

namespace infospace {

/// Poincare map x' = L x + b. The matrix L must preserve the metric,
/// L^T g L = g, to 1e-12 per entry; poincare_apply enforces this.
struct LorentzMap {
    std::array<std::array<double, 4>, 4> lambda{};  // lambda[row][col]
    FourVector translation{};                       // position units

    static LorentzMap identity();

    /// max |L^T g L - g| over all entries.
    double metric_defect() const;
    bool preserves_metric(double tol = 1e-12) const { return metric_defect() <= tol; }
};

/// Composition (a ∘ b): apply b first, then a.
LorentzMap compose(const LorentzMap& a, const LorentzMap& b);

/// L x + b. Throws ErrorCode::invalid_map if the matrix fails the metric
/// preservation check.
FourVector poincare_apply(const LorentzMap& map, const FourVector& x);

/// Pure boost with velocity beta*nu_c, no translation. Throws
/// ErrorCode::superluminal for |beta| >= 1.
LorentzMap boost_from_beta(const Vec3& beta);

/// 1/sqrt(1-beta^2); superluminal error for |beta| >= 1.
double lorentz_gamma(const Vec3& beta);

/// Four-velocity gamma*(nu_c, nu_c*beta); satisfies v.v = nu_c^2.
FourVector four_velocity(const Vec3& beta, const InfoConstants& k);

/// Dimensionless four-velocity gamma*(1, beta); satisfies b.b = 1.
FourVector four_beta(const Vec3& beta);

/// Proper-time interval dt*sqrt(1-beta^2).
double proper_time(double dt, const Vec3& beta);

/// Mean-displacement quantization: spatial components of a mean
/// displacement snap to integer bit counts, with the mean time interval
/// reconstructed from those integers and the mean squared speed.
struct QuantizedDisplacement {
    std::array<long long, 3> n{0, 0, 0};       // bit counts per space axis
    double mean_dt = 0.0;                      // s
    std::array<double, 3> residuals{0, 0, 0};  // raw_i - n_i*lambda_c
};

/// Nearest-integer (ties to even) quantization of the spatial part of
/// raw_mean, plus mean_dt = lambda_c/sqrt(mean_speed_sq) * |n|.
/// Throws ErrorCode::invalid_input for mean_speed_sq <= 0.
QuantizedDisplacement quantize_displacement(const FourVector& raw_mean, double mean_speed_sq,
                                            const InfoConstants& k);

}  // namespace infospace
