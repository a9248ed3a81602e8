#include "infospace/kinematics.hpp"

#include <cmath>

#include "infospace/error.hpp"

namespace infospace {

LorentzMap LorentzMap::identity() {
    LorentzMap m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.lambda[i][j] = (i == j) ? 1.0 : 0.0;
    return m;
}

double LorentzMap::metric_defect() const {
    // (L^T g L)_ij = sum_k L_ki g_kk L_kj
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += lambda[k][i] * metric_sign(k) * lambda[k][j];
            const double want = (i == j) ? metric_sign(i) : 0.0;
            worst = std::max(worst, std::abs(s - want));
        }
    }
    return worst;
}

LorentzMap compose(const LorentzMap& a, const LorentzMap& b) {
    LorentzMap r;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += a.lambda[i][k] * b.lambda[k][j];
            r.lambda[i][j] = s;
        }
    }
    FourVector lb;
    for (int i = 0; i < 4; ++i) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += a.lambda[i][k] * b.translation[k];
        lb[i] = s;
    }
    r.translation = lb + a.translation;
    return r;
}

FourVector poincare_apply(const LorentzMap& map, const FourVector& x) {
    if (!map.preserves_metric()) {
        fail(ErrorCode::invalid_map, "constants_kinematics", "poincare_apply",
             "matrix does not preserve the metric to 1e-12");
    }
    FourVector out;
    out.unit = x.unit;
    for (int i = 0; i < 4; ++i) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += map.lambda[i][k] * x[k];
        out[i] = s + map.translation[i];
    }
    return out;
}

double lorentz_gamma(const Vec3& beta) {
    const double b2 = beta[0] * beta[0] + beta[1] * beta[1] + beta[2] * beta[2];
    if (!(b2 < 1.0)) {
        fail(ErrorCode::superluminal, "constants_kinematics", "lorentz_gamma",
             "|beta| must be < 1");
    }
    return 1.0 / std::sqrt(1.0 - b2);
}

LorentzMap boost_from_beta(const Vec3& beta) {
    const double g = lorentz_gamma(beta);
    const double b2 = beta[0] * beta[0] + beta[1] * beta[1] + beta[2] * beta[2];
    LorentzMap m = LorentzMap::identity();
    if (b2 == 0.0) return m;
    m.lambda[0][0] = g;
    for (int i = 0; i < 3; ++i) {
        m.lambda[0][i + 1] = -g * beta[i];
        m.lambda[i + 1][0] = -g * beta[i];
        for (int j = 0; j < 3; ++j) {
            m.lambda[i + 1][j + 1] = (i == j ? 1.0 : 0.0) + (g - 1.0) * beta[i] * beta[j] / b2;
        }
    }
    return m;
}

FourVector four_beta(const Vec3& beta) {
    const double g = lorentz_gamma(beta);
    return FourVector{g, g * beta[0], g * beta[1], g * beta[2], Unit::none};
}

FourVector four_velocity(const Vec3& beta, const InfoConstants& k) {
    FourVector v = four_beta(beta) * k.nu_c;
    v.unit = Unit::velocity;
    return v;
}

double proper_time(double dt, const Vec3& beta) {
    if (dt < 0.0) {
        fail(ErrorCode::invalid_input, "constants_kinematics", "proper_time",
             "dt must be non-negative");
    }
    const double b2 = beta[0] * beta[0] + beta[1] * beta[1] + beta[2] * beta[2];
    if (!(b2 < 1.0)) {
        fail(ErrorCode::superluminal, "constants_kinematics", "proper_time", "|beta| must be < 1");
    }
    return dt * std::sqrt(1.0 - b2);
}

QuantizedDisplacement quantize_displacement(const FourVector& raw_mean, double mean_speed_sq,
                                            const InfoConstants& k) {
    if (!(mean_speed_sq > 0.0)) {
        fail(ErrorCode::invalid_input, "constants_kinematics", "quantize_displacement",
             "mean squared speed must be positive");
    }
    QuantizedDisplacement q;
    double sumsq = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double ratio = raw_mean[i + 1] / k.lambda_c;
        // rint honors the default rounding mode, round-half-to-even.
        const double n = std::nearbyint(ratio);
        q.n[i] = static_cast<long long>(n);
        q.residuals[i] = raw_mean[i + 1] - n * k.lambda_c;
        sumsq += n * n;
    }
    q.mean_dt = k.lambda_c / std::sqrt(mean_speed_sq) * std::sqrt(sumsq);
    return q;
}

}  // namespace infospace
