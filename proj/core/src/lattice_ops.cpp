#include "infospace/lattice_ops.hpp"

#include <algorithm>
#include <cmath>

namespace infospace {

namespace {

int perm_sign(const std::array<int, 4>& p) {
    int sign = 1;
    std::array<int, 4> q = p;
    for (int i = 0; i < 4; ++i) {
        while (q[i] != i) {
            std::swap(q[i], q[q[i]]);
            sign = -sign;
        }
    }
    return sign;
}

std::array<LeviCivita::Entry, 24> build_entries() {
    std::array<LeviCivita::Entry, 24> out{};
    std::array<int, 4> p{0, 1, 2, 3};
    int k = 0;
    do {
        out[k++] = {p, static_cast<double>(perm_sign(p))};
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

void require_extent(const TensorField& field, int axis, int need, const char* op) {
    if (field.lattice().extents[axis] < need) {
        fail(ErrorCode::shape_mismatch, "lattice_tensor", op,
             "axis " + std::to_string(axis) + " needs >= " + std::to_string(need) + " points");
    }
}

}  // namespace

const std::array<LeviCivita::Entry, 24>& LeviCivita::entries() {
    static const auto table = build_entries();
    return table;
}

double LeviCivita::at(int a, int b, int c, int d) {
    const std::array<int, 4> p{a, b, c, d};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] == p[j]) return 0.0;
    return static_cast<double>(perm_sign(p));
}

TensorField derivative(const TensorField& field, int axis) {
    require_extent(field, axis, 3, "derivative");
    const Lattice4& lat = field.lattice();
    TensorField out(lat, field.rank(), field.variance());
    const double h = lat.spacing[axis];
    const std::size_t nc = field.components_per_site();
    const int n = lat.extents[axis];

    // Stride of one step along `axis` in flat site numbering.
    Index4 step{0, 0, 0, 0};
    step[axis] = 1;
    const std::ptrdiff_t stride =
        static_cast<std::ptrdiff_t>(lat.flat(step)) - static_cast<std::ptrdiff_t>(lat.flat({0, 0, 0, 0}));

    const std::size_t nsites = lat.site_count();
    for (std::size_t s = 0; s < nsites; ++s) {
        const Index4 idx = lat.unflat(s);
        const int i = idx[axis];
        auto dst = out.site_components(s);
        if (i >= 1 && i <= n - 2) {
            auto fwd = field.site_components(s + stride);
            auto bwd = field.site_components(s - stride);
            for (std::size_t c = 0; c < nc; ++c) dst[c] = (fwd[c] - bwd[c]) / (2.0 * h);
        } else if (i == 0) {
            auto f0 = field.site_components(s);
            auto f1 = field.site_components(s + stride);
            auto f2 = field.site_components(s + 2 * stride);
            for (std::size_t c = 0; c < nc; ++c)
                dst[c] = (-3.0 * f0[c] + 4.0 * f1[c] - f2[c]) / (2.0 * h);
        } else {
            auto f0 = field.site_components(s);
            auto f1 = field.site_components(s - stride);
            auto f2 = field.site_components(s - 2 * stride);
            for (std::size_t c = 0; c < nc; ++c)
                dst[c] = (3.0 * f0[c] - 4.0 * f1[c] + f2[c]) / (2.0 * h);
        }
    }
    return out;
}

TensorField second_derivative(const TensorField& field, int axis) {
    require_extent(field, axis, 3, "second_derivative");
    const Lattice4& lat = field.lattice();
    TensorField out(lat, field.rank(), field.variance());
    const double h2 = lat.spacing[axis] * lat.spacing[axis];
    const std::size_t nc = field.components_per_site();
    const int n = lat.extents[axis];

    Index4 step{0, 0, 0, 0};
    step[axis] = 1;
    const std::ptrdiff_t stride =
        static_cast<std::ptrdiff_t>(lat.flat(step)) - static_cast<std::ptrdiff_t>(lat.flat({0, 0, 0, 0}));

    const std::size_t nsites = lat.site_count();
    for (std::size_t s = 0; s < nsites; ++s) {
        const Index4 idx = lat.unflat(s);
        const int i = idx[axis];
        auto dst = out.site_components(s);
        if (i >= 1 && i <= n - 2) {
            auto fwd = field.site_components(s + stride);
            auto mid = field.site_components(s);
            auto bwd = field.site_components(s - stride);
            for (std::size_t c = 0; c < nc; ++c) dst[c] = (fwd[c] - 2.0 * mid[c] + bwd[c]) / h2;
        } else {
            const std::ptrdiff_t dir = (i == 0) ? stride : -stride;
            auto f0 = field.site_components(s);
            auto f1 = field.site_components(s + dir);
            auto f2 = field.site_components(s + 2 * dir);
            if (n >= 4) {
                auto f3 = field.site_components(s + 3 * dir);
                for (std::size_t c = 0; c < nc; ++c)
                    dst[c] = (2.0 * f0[c] - 5.0 * f1[c] + 4.0 * f2[c] - f3[c]) / h2;
            } else {
                // Only three points: first-order one-sided fallback.
                for (std::size_t c = 0; c < nc; ++c) dst[c] = (f0[c] - 2.0 * f1[c] + f2[c]) / h2;
            }
        }
    }
    return out;
}

TensorField four_divergence(const TensorField& field, int slot, double lambda_scale) {
    if (field.rank() < 1) {
        fail(ErrorCode::rank_error, "lattice_tensor", "four_divergence",
             "input must have rank >= 1");
    }
    if (slot < 0 || slot >= field.rank()) {
        fail(ErrorCode::rank_error, "lattice_tensor", "four_divergence", "slot out of range");
    }
    const int m = field.rank();
    std::vector<Variance> out_var;
    for (int k = 0; k < m; ++k)
        if (k != slot) out_var.push_back(field.variance()[k]);
    TensorField out(field.lattice(), m - 1, out_var);

    // A covariant slot pairs with the raised derivative, which carries the
    // metric signs; a contravariant slot pairs with the plain derivative.
    const bool covariant_slot = field.variance()[slot] == Variance::covariant;

    const std::size_t nsites = field.lattice().site_count();
    const std::size_t n_out = out.components_per_site();
    const int shift = 2 * (m - 1 - slot);

    for (int axis = 0; axis < 4; ++axis) {
        const TensorField d = derivative(field, axis);
        const double w = lambda_scale * (covariant_slot ? metric_sign(axis) : 1.0);
        for (std::size_t s = 0; s < nsites; ++s) {
            auto src = d.site_components(s);
            auto dst = out.site_components(s);
            for (std::size_t co = 0; co < n_out; ++co) {
                // Insert `axis` into the slot position of the source tuple.
                const std::size_t hi = co >> shift;
                const std::size_t lo = co & ((std::size_t{1} << shift) - 1);
                const std::size_t cs = (((hi << 2) | static_cast<std::size_t>(axis)) << shift) | lo;
                dst[co] += w * src[cs];
            }
        }
    }
    return out;
}

TensorField dalembertian(const TensorField& field, double lambda_c) {
    TensorField out(field.lattice(), field.rank(), field.variance());
    const double l2 = lambda_c * lambda_c;
    for (int axis = 0; axis < 4; ++axis) {
        const TensorField d2 = second_derivative(field, axis);
        const double w = l2 * metric_sign(axis);
        auto& acc = out.data();
        const auto& src = d2.data();
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * src[i];
    }
    return out;
}

TensorField gradient_append(const TensorField& field) {
    const int m = field.rank();
    std::vector<Variance> var = field.variance();
    var.push_back(Variance::covariant);
    TensorField out(field.lattice(), m + 1, var);
    const std::size_t nc_in = field.components_per_site();
    const std::size_t nsites = field.lattice().site_count();
    for (int axis = 0; axis < 4; ++axis) {
        const TensorField d = derivative(field, axis);
        for (std::size_t s = 0; s < nsites; ++s) {
            auto src = d.site_components(s);
            auto dst = out.site_components(s);
            for (std::size_t c = 0; c < nc_in; ++c) dst[c * 4 + axis] = src[c];
        }
    }
    return out;
}

TensorField field_tensor(const TensorField& potential) {
    if (potential.rank() != 1 || potential.variance()[0] != Variance::contravariant) {
        fail(ErrorCode::shape_mismatch, "lattice_tensor", "field_tensor",
             "potential must be a contravariant rank-1 field");
    }
    const Lattice4& lat = potential.lattice();
    TensorField out(lat, 2, {Variance::contravariant, Variance::contravariant});
    const std::size_t nsites = lat.site_count();

    // M[a][b] = d^a A^b = metric_sign(a) * plain d_a A^b.
    std::array<TensorField, 4> rows = {derivative(potential, 0), derivative(potential, 1),
                                       derivative(potential, 2), derivative(potential, 3)};
    for (std::size_t s = 0; s < nsites; ++s) {
        auto dst = out.site_components(s);
        double m[4][4];
        for (int a = 0; a < 4; ++a) {
            auto row = rows[a].site_components(s);
            for (int b = 0; b < 4; ++b) m[a][b] = metric_sign(a) * row[b];
        }
        for (int a = 0; a < 4; ++a) {
            dst[a * 4 + a] = 0.0;
            for (int b = a + 1; b < 4; ++b) {
                const double v = m[a][b] - m[b][a];
                dst[a * 4 + b] = v;
                dst[b * 4 + a] = -v;
            }
        }
    }
    return out;
}

TensorField dual_tensor(const TensorField& g) {
    if (g.rank() != 2 || g.variance()[0] != Variance::contravariant ||
        g.variance()[1] != Variance::contravariant) {
        fail(ErrorCode::shape_mismatch, "lattice_tensor", "dual_tensor",
             "input must be a contravariant rank-2 field");
    }
    const double scale = std::max(1.0, max_abs(g));
    const std::size_t nsites = g.lattice().site_count();
    for (std::size_t s = 0; s < nsites; ++s) {
        auto v = g.site_components(s);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                if (std::abs(v[a * 4 + b] + v[b * 4 + a]) > 1e-12 * scale) {
                    fail(ErrorCode::invalid_input, "lattice_tensor", "dual_tensor",
                         "input is not antisymmetric to 1e-12");
                }
    }

    TensorField out(g.lattice(), 2, {Variance::contravariant, Variance::contravariant});
    for (std::size_t s = 0; s < nsites; ++s) {
        auto src = g.site_components(s);
        auto dst = out.site_components(s);
        for (const auto& e : LeviCivita::entries()) {
            const int a = e.idx[0], b = e.idx[1], r = e.idx[2], q = e.idx[3];
            // G_{rq} = g_rr g_qq G^{rq}
            const double lowered = metric_sign(r) * metric_sign(q) * src[r * 4 + q];
            dst[a * 4 + b] += 0.5 * e.sign * lowered;
        }
    }
    return out;
}

TensorField heterogeneity(const TensorField& field, double lambda_c) {
    return scale(gradient_append(field), 0.5 * lambda_c);
}

double max_abs_interior(const TensorField& field) {
    const Lattice4& lat = field.lattice();
    double worst = 0.0;
    const std::size_t nc = field.components_per_site();
    for (std::size_t s = 0; s < lat.site_count(); ++s) {
        if (!lat.interior(lat.unflat(s))) continue;
        auto v = field.site_components(s);
        for (std::size_t c = 0; c < nc; ++c) worst = std::max(worst, std::abs(v[c]));
    }
    return worst;
}

double max_abs(const TensorField& field) {
    double worst = 0.0;
    for (double v : field.data()) worst = std::max(worst, std::abs(v));
    return worst;
}

}  // namespace infospace
