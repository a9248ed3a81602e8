#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "infospace/error.hpp"
#include "infospace/four_vector.hpp"

namespace infospace {

using Index4 = std::array<int, 4>;

/// Uniform four-dimensional sampling grid. Axis 0 is the time-like
/// coordinate; spacings are expressed in lambda_c units. Differential
/// operators additionally require >= 3 points per axis, enforced at the
/// operator, not here, so degenerate single-cell domains remain usable as
/// plain summation regions.
struct Lattice4 {
    Index4 extents{1, 1, 1, 1};
    std::array<double, 4> spacing{1.0, 1.0, 1.0, 1.0};
    FourVector origin{};

    Lattice4() = default;
    Lattice4(const Index4& e, const std::array<double, 4>& h, const FourVector& o)
        : extents(e), spacing(h), origin(o) {
        for (int a = 0; a < 4; ++a) {
            if (extents[a] < 1) {
                fail(ErrorCode::invalid_input, "lattice_tensor", "Lattice4",
                     "extents must be >= 1 per axis");
            }
            if (!(spacing[a] > 0.0)) {
                fail(ErrorCode::invalid_input, "lattice_tensor", "Lattice4",
                     "spacings must be positive");
            }
        }
    }

    std::size_t site_count() const {
        return static_cast<std::size_t>(extents[0]) * extents[1] * extents[2] * extents[3];
    }

    std::size_t flat(const Index4& i) const {
        return ((static_cast<std::size_t>(i[0]) * extents[1] + i[1]) * extents[2] + i[2]) *
                   extents[3] +
               i[3];
    }

    Index4 unflat(std::size_t s) const {
        Index4 i;
        i[3] = static_cast<int>(s % extents[3]);
        s /= extents[3];
        i[2] = static_cast<int>(s % extents[2]);
        s /= extents[2];
        i[1] = static_cast<int>(s % extents[1]);
        s /= extents[1];
        i[0] = static_cast<int>(s);
        return i;
    }

    FourVector coordinate(const Index4& i) const {
        FourVector x = origin;
        for (int a = 0; a < 4; ++a) x[a] += spacing[a] * i[a];
        x.unit = Unit::position;
        return x;
    }

    double cell_volume() const { return spacing[0] * spacing[1] * spacing[2] * spacing[3]; }

    bool interior(const Index4& i) const {
        for (int a = 0; a < 4; ++a)
            if (i[a] < 1 || i[a] > extents[a] - 2) return false;
        return true;
    }

    bool operator==(const Lattice4& o) const {
        return extents == o.extents && spacing == o.spacing && origin.c == o.origin.c;
    }
};

}  // namespace infospace
