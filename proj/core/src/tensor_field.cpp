#include "infospace/tensor_field.hpp"

#include <cmath>

namespace infospace {

namespace {

std::size_t pow4(int m) { return std::size_t{1} << (2 * m); }

void require_same_lattice(const TensorField& a, const TensorField& b, const char* op) {
    if (!(a.lattice() == b.lattice())) {
        fail(ErrorCode::shape_mismatch, "lattice_tensor", op, "fields live on different lattices");
    }
}

}  // namespace

TensorField::TensorField(Lattice4 lattice, int rank, std::vector<Variance> variance, int rank_cap)
    : lattice_(std::move(lattice)), rank_(rank), variance_(std::move(variance)) {
    if (rank_ < 0 || rank_ > rank_cap) {
        fail(ErrorCode::rank_error, "lattice_tensor", "TensorField",
             "rank " + std::to_string(rank_) + " outside [0, " + std::to_string(rank_cap) + "]");
    }
    if (static_cast<int>(variance_.size()) != rank_) {
        fail(ErrorCode::shape_mismatch, "lattice_tensor", "TensorField",
             "variance mask length must equal rank");
    }
    ncomp_ = pow4(rank_);
    data_.assign(lattice_.site_count() * ncomp_, 0.0);
}

TensorField TensorField::contravariant(const Lattice4& lattice, int rank, int rank_cap) {
    return TensorField(lattice, rank, std::vector<Variance>(rank, Variance::contravariant),
                       rank_cap);
}

TensorField TensorField::scalar(const Lattice4& lattice) {
    return TensorField(lattice, 0, {});
}

std::size_t TensorField::comp_index(std::span<const int> idx) {
    std::size_t c = 0;
    for (int v : idx) c = c * 4 + static_cast<std::size_t>(v);
    return c;
}

void TensorField::comp_tuple(std::size_t comp, std::span<int> out) const {
    for (int k = rank_ - 1; k >= 0; --k) {
        out[k] = static_cast<int>(comp & 3u);
        comp >>= 2;
    }
}

bool TensorField::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

TensorField raise_lower(const TensorField& field, int slot) {
    if (slot < 0 || slot >= field.rank()) {
        fail(ErrorCode::rank_error, "lattice_tensor", "raise_lower", "index slot out of range");
    }
    std::vector<Variance> var = field.variance();
    var[slot] = var[slot] == Variance::contravariant ? Variance::covariant
                                                     : Variance::contravariant;
    TensorField out(field.lattice(), field.rank(), var);

    const std::size_t nc = field.components_per_site();
    const std::size_t nsites = field.lattice().site_count();
    // The slot's digit selects the sign: time axis keeps it, space flips it.
    const int shift = 2 * (field.rank() - 1 - slot);
    for (std::size_t s = 0; s < nsites; ++s) {
        auto src = field.site_components(s);
        auto dst = out.site_components(s);
        for (std::size_t c = 0; c < nc; ++c) {
            const int axis = static_cast<int>((c >> shift) & 3u);
            dst[c] = axis == 0 ? src[c] : -src[c];
        }
    }
    return out;
}

TensorField lower_all(const TensorField& field) {
    TensorField out = field;
    for (int k = 0; k < field.rank(); ++k) {
        if (out.variance()[k] == Variance::contravariant) out = raise_lower(out, k);
    }
    return out;
}

TensorField contract(const TensorField& a, const TensorField& b,
                     std::span<const std::pair<int, int>> pairing) {
    require_same_lattice(a, b, "contract");
    const int ra = a.rank();
    const int rb = b.rank();
    const int np = static_cast<int>(pairing.size());

    std::vector<bool> used_a(ra, false), used_b(rb, false);
    for (auto [sa, sb] : pairing) {
        if (sa < 0 || sa >= ra || sb < 0 || sb >= rb) {
            fail(ErrorCode::rank_error, "lattice_tensor", "contract", "pairing slot out of range");
        }
        if (used_a[sa] || used_b[sb]) {
            fail(ErrorCode::contraction_mismatch, "lattice_tensor", "contract",
                 "slot paired twice");
        }
        used_a[sa] = used_b[sb] = true;
        if (a.variance()[sa] == b.variance()[sb]) {
            fail(ErrorCode::contraction_mismatch, "lattice_tensor", "contract",
                 "paired slots must have opposite variance");
        }
    }

    std::vector<int> free_a, free_b;
    std::vector<Variance> out_var;
    for (int k = 0; k < ra; ++k)
        if (!used_a[k]) {
            free_a.push_back(k);
            out_var.push_back(a.variance()[k]);
        }
    for (int k = 0; k < rb; ++k)
        if (!used_b[k]) {
            free_b.push_back(k);
            out_var.push_back(b.variance()[k]);
        }

    const int rout = static_cast<int>(out_var.size());
    TensorField out(a.lattice(), rout, out_var);

    const std::size_t n_out = out.components_per_site();
    const std::size_t n_sum = pow4(np);
    const std::size_t nsites = a.lattice().site_count();

    // Precompute, for every (result comp, summation comp), the source
    // component index on each side. Small tables: at most 256*256 entries.
    std::vector<std::size_t> idx_a(n_out * n_sum), idx_b(n_out * n_sum);
    std::vector<int> ta(ra), tb(rb), tout(rout), tsum(np);
    for (std::size_t co = 0; co < n_out; ++co) {
        std::size_t rem = co;
        for (int k = rout - 1; k >= 0; --k) {
            tout[k] = static_cast<int>(rem & 3u);
            rem >>= 2;
        }
        for (std::size_t cs = 0; cs < n_sum; ++cs) {
            rem = cs;
            for (int k = np - 1; k >= 0; --k) {
                tsum[k] = static_cast<int>(rem & 3u);
                rem >>= 2;
            }
            for (int k = 0; k < static_cast<int>(free_a.size()); ++k) ta[free_a[k]] = tout[k];
            for (int k = 0; k < static_cast<int>(free_b.size()); ++k)
                tb[free_b[k]] = tout[free_a.size() + k];
            for (int k = 0; k < np; ++k) {
                ta[pairing[k].first] = tsum[k];
                tb[pairing[k].second] = tsum[k];
            }
            idx_a[co * n_sum + cs] = TensorField::comp_index(std::span<const int>(ta.data(), ra));
            idx_b[co * n_sum + cs] = TensorField::comp_index(std::span<const int>(tb.data(), rb));
        }
    }

    for (std::size_t s = 0; s < nsites; ++s) {
        auto sa = a.site_components(s);
        auto sb = b.site_components(s);
        auto so = out.site_components(s);
        for (std::size_t co = 0; co < n_out; ++co) {
            double acc = 0.0;
            const std::size_t base = co * n_sum;
            for (std::size_t cs = 0; cs < n_sum; ++cs) {
                acc += sa[idx_a[base + cs]] * sb[idx_b[base + cs]];
            }
            so[co] = acc;
        }
    }
    return out;
}

TensorField lorentz_transform(const TensorField& field, const LorentzMap& map) {
    for (Variance v : field.variance()) {
        if (v != Variance::contravariant) {
            fail(ErrorCode::invalid_input, "lattice_tensor", "lorentz_transform",
                 "transformation expects all-contravariant fields");
        }
    }
    if (!map.preserves_metric()) {
        fail(ErrorCode::invalid_map, "lattice_tensor", "lorentz_transform",
             "matrix does not preserve the metric to 1e-12");
    }
    const int m = field.rank();
    TensorField out(field.lattice(), m, field.variance());
    const std::size_t nc = field.components_per_site();
    std::vector<int> ti(m), tj(m);
    for (std::size_t s = 0; s < field.lattice().site_count(); ++s) {
        auto src = field.site_components(s);
        auto dst = out.site_components(s);
        for (std::size_t ci = 0; ci < nc; ++ci) {
            field.comp_tuple(ci, ti);
            double acc = 0.0;
            for (std::size_t cj = 0; cj < nc; ++cj) {
                field.comp_tuple(cj, tj);
                double w = 1.0;
                for (int k = 0; k < m; ++k) w *= map.lambda[ti[k]][tj[k]];
                acc += w * src[cj];
            }
            dst[ci] = acc;
        }
    }
    return out;
}

namespace {
TensorField zip(const TensorField& a, const TensorField& b, const char* op, bool plus) {
    require_same_lattice(a, b, op);
    if (a.rank() != b.rank() || a.variance() != b.variance()) {
        fail(ErrorCode::shape_mismatch, "lattice_tensor", op, "field shapes differ");
    }
    TensorField out = a;
    auto& d = out.data();
    const auto& e = b.data();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = plus ? d[i] + e[i] : d[i] - e[i];
    return out;
}
}  // namespace

TensorField add(const TensorField& a, const TensorField& b) { return zip(a, b, "add", true); }
TensorField sub(const TensorField& a, const TensorField& b) { return zip(a, b, "sub", false); }

TensorField scale(const TensorField& a, double s) {
    TensorField out = a;
    for (double& v : out.data()) v *= s;
    return out;
}

TensorField mul(const TensorField& a, const TensorField& b) {
    require_same_lattice(a, b, "mul");
    if (a.rank() != 0 || b.rank() != 0) {
        fail(ErrorCode::rank_error, "lattice_tensor", "mul", "pointwise product is rank-0 only");
    }
    TensorField out = a;
    auto& d = out.data();
    const auto& e = b.data();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] *= e[i];
    return out;
}

TensorField mul_scalar(const TensorField& a, const TensorField& s) {
    require_same_lattice(a, s, "mul_scalar");
    if (s.rank() != 0) {
        fail(ErrorCode::rank_error, "lattice_tensor", "mul_scalar", "scale field must be rank 0");
    }
    TensorField out = a;
    const std::size_t nc = a.components_per_site();
    for (std::size_t site = 0; site < a.lattice().site_count(); ++site) {
        const double w = s.value(site);
        auto dst = out.site_components(site);
        for (std::size_t c = 0; c < nc; ++c) dst[c] *= w;
    }
    return out;
}

TensorField constant_scalar(const Lattice4& lattice, double value) {
    TensorField out = TensorField::scalar(lattice);
    for (double& v : out.data()) v = value;
    return out;
}

}  // namespace infospace
