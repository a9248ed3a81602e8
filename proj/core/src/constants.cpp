#include "infospace/constants.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "infospace/error.hpp"

namespace infospace {

PhysicalConstants codata2002() {
    return PhysicalConstants{299792458.0, 1.05457168e-34, 6.6742e-11};
}

InfoConstants derive_constants(const PhysicalConstants& phys, UnitMode mode) {
    if (!(phys.c > 0.0) || !(phys.hbar > 0.0) || !(phys.g_n > 0.0)) {
        fail(ErrorCode::invalid_input, "constants_kinematics", "derive_constants",
             "physical constants must be strictly positive");
    }

    InfoConstants k;
    k.mode = mode;
    k.lambda_c = 1.0;
    if (mode == UnitMode::NATURAL) {
        k.nu_c = 1.0;
        k.q_c = 1.0;
        k.hbar_c = 1.0 / (2.0 * std::numbers::pi);
        k.t_p = 1.0;
        k.l_p = 1.0;
        return k;
    }

    const double c5_over_hg = std::pow(phys.c, 5) / (phys.hbar * phys.g_n);
    k.nu_c = std::sqrt(c5_over_hg);                       // lambda_c = 1 bit
    k.q_c = std::sqrt(c5_over_hg);                        // lambda_c^6 = 1
    k.hbar_c = c5_over_hg / (2.0 * std::numbers::pi);     // lambda_c^5 = 1
    k.t_p = std::sqrt(phys.hbar * phys.g_n / std::pow(phys.c, 5));
    k.l_p = std::sqrt(phys.hbar * phys.g_n / std::pow(phys.c, 3));
    return k;
}

BinaryExponentForm to_binary_exponent(double value) {
    if (value == 0.0 || !std::isfinite(value)) return {value, 0};
    int e = 0;
    double f = std::frexp(value, &e);  // f in [0.5, 1)
    return {2.0 * f, e - 1};
}

std::string format_binary_exponent(double value) {
    const auto form = to_binary_exponent(value);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f*2^%d", form.mantissa, form.exponent);
    return buf;
}

}  // namespace infospace
