#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace infospace {

/// Unit role carried by a four-vector. Purely informational: arithmetic does
/// not convert units, the tag documents what the components mean.
enum class Unit {
    none,
    position,         // bit
    velocity,         // bit/s
    momentum,         // bit^4/s^2
    potential,        // bit/s
    current_density,  // 1/(bit*s)
};

/// Metric signature (+,-,-,-): +1 for the time axis, -1 for space axes.
constexpr double metric_sign(int axis) { return axis == 0 ? 1.0 : -1.0; }

/// Contravariant four-component quantity x^a = (x^0, x^1, x^2, x^3).
struct FourVector {
    std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};
    Unit unit = Unit::none;

    constexpr FourVector() = default;
    constexpr FourVector(double x0, double x1, double x2, double x3, Unit u = Unit::none)
        : c{x0, x1, x2, x3}, unit(u) {}

    double& operator[](std::size_t i) { return c[i]; }
    double operator[](std::size_t i) const { return c[i]; }

    FourVector operator+(const FourVector& o) const {
        return {c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2], c[3] + o.c[3], unit};
    }
    FourVector operator-(const FourVector& o) const {
        return {c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2], c[3] - o.c[3], unit};
    }
    FourVector operator*(double s) const { return {c[0] * s, c[1] * s, c[2] * s, c[3] * s, unit}; }
    FourVector operator/(double s) const { return *this * (1.0 / s); }

    /// Index-lowered copy: x_a = g_ab x^b (space components negated).
    FourVector lowered() const { return {c[0], -c[1], -c[2], -c[3], unit}; }

    bool finite() const {
        return std::isfinite(c[0]) && std::isfinite(c[1]) && std::isfinite(c[2]) &&
               std::isfinite(c[3]);
    }
};

inline FourVector operator*(double s, const FourVector& v) { return v * s; }

/// Pseudo-Euclidean scalar product a^0 b^0 - a^1 b^1 - a^2 b^2 - a^3 b^3.
inline double minkowski_dot(const FourVector& a, const FourVector& b) {
    return a.c[0] * b.c[0] - a.c[1] * b.c[1] - a.c[2] * b.c[2] - a.c[3] * b.c[3];
}

/// Euclidean norms are occasionally needed for tolerances and step sizes.
inline double euclidean_norm(const FourVector& v) {
    return std::sqrt(v.c[0] * v.c[0] + v.c[1] * v.c[1] + v.c[2] * v.c[2] + v.c[3] * v.c[3]);
}

using Vec3 = std::array<double, 3>;

inline double norm3(const Vec3& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

}  // namespace infospace
