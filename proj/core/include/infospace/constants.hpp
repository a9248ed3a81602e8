#pragma once

#include <string>

namespace infospace {

/// Fundamental physical inputs (SI): speed of light, reduced Planck
/// constant, gravitational constant.
struct PhysicalConstants {
    double c = 0.0;      // m/s
    double hbar = 0.0;   // J*s
    double g_n = 0.0;    // m^3 kg^-1 s^-2
};

/// CODATA 2002 recommended values, the default input table.
PhysicalConstants codata2002();

enum class UnitMode { SI, NATURAL };

/// Derived constant set of the information space.
///
/// lambda_c is the minimal mean measurable distance and is 1 bit in both
/// modes. In NATURAL mode the remaining constants are normalized so that
/// lambda_c = t_p = nu_c = q_c = 1 and hbar_c = 1/(2*pi); every numeric
/// module computes in that normalization internally.
struct InfoConstants {
    double lambda_c = 1.0;  // bit
    double nu_c = 0.0;      // bit/s      invariant information velocity
    double q_c = 0.0;       // bit^3/s    emotion scale constant
    double hbar_c = 0.0;    // bit^5/s^2  action scale constant
    double t_p = 0.0;       // s          Planck time
    double l_p = 0.0;       // m          Planck length
    UnitMode mode = UnitMode::SI;
};

/// Builds the full constant set from physical inputs.
///
/// SI mode evaluates
///   nu_c   = sqrt(lambda_c^2 c^5 / (hbar G))
///   q_c    = sqrt(lambda_c^6 c^5 / (hbar G))
///   hbar_c = lambda_c^5 c^5 / (2 pi hbar G)
/// together with the Planck time/length; NATURAL mode returns the
/// normalized set. Throws ErrorCode::invalid_input unless all physical
/// constants are strictly positive.
InfoConstants derive_constants(const PhysicalConstants& phys, UnitMode mode);

/// Mantissa/exponent decomposition value = mantissa * 2^exponent with
/// mantissa in [1, 2). Used to report constants in both decimal and
/// binary-exponent form.
struct BinaryExponentForm {
    double mantissa = 0.0;
    int exponent = 0;
};
BinaryExponentForm to_binary_exponent(double value);
std::string format_binary_exponent(double value);

}  // namespace infospace
