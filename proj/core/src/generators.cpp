#include "infospace/generators.hpp"

#include <cmath>

namespace infospace {

FieldGenerator FieldGenerator::constant(int rank, std::vector<double> values) {
    FieldGenerator g;
    g.rank = rank;
    const std::size_t ncomp = std::size_t{1} << (2 * rank);
    if (values.size() != ncomp) {
        fail(ErrorCode::invalid_input, "cli_harness", "FieldGenerator",
             "constant generator needs 4^rank component values");
    }
    g.terms.resize(ncomp);
    for (std::size_t c = 0; c < ncomp; ++c) {
        if (values[c] != 0.0) g.terms[c].push_back({values[c], {0, 0, 0, 0}});
    }
    return g;
}

FieldGenerator FieldGenerator::constant_scalar_value(double value) {
    return constant(0, {value});
}

void FieldGenerator::validate() const {
    if (rank < 0 || rank > TensorField::default_rank_cap) {
        fail(ErrorCode::invalid_input, "cli_harness", "FieldGenerator", "rank out of range");
    }
    const std::size_t ncomp = std::size_t{1} << (2 * rank);
    if (terms.size() != ncomp) {
        fail(ErrorCode::invalid_input, "cli_harness", "FieldGenerator",
             "generator needs one term list per component");
    }
    if (!variance.empty() && static_cast<int>(variance.size()) != rank) {
        fail(ErrorCode::invalid_input, "cli_harness", "FieldGenerator",
             "variance mask length must equal rank");
    }
    for (const auto& comp : terms) {
        for (const auto& t : comp) {
            if (!std::isfinite(t.coeff)) {
                fail(ErrorCode::invalid_input, "cli_harness", "FieldGenerator",
                     "non-finite coefficient");
            }
            for (int p : t.powers) {
                if (p < 0 || p > 8) {
                    fail(ErrorCode::invalid_input, "cli_harness", "FieldGenerator",
                         "monomial powers must lie in [0, 8]");
                }
            }
        }
    }
}

TensorField FieldGenerator::realize(const Lattice4& lattice) const {
    validate();
    std::vector<Variance> var =
        variance.empty() ? std::vector<Variance>(rank, Variance::contravariant) : variance;
    TensorField out(lattice, rank, var);
    const std::size_t ncomp = out.components_per_site();
    for (std::size_t s = 0; s < lattice.site_count(); ++s) {
        const FourVector x = lattice.coordinate(lattice.unflat(s));
        auto dst = out.site_components(s);
        for (std::size_t c = 0; c < ncomp; ++c) {
            double acc = 0.0;
            for (const auto& t : terms[c]) {
                double v = t.coeff;
                for (int a = 0; a < 4; ++a) {
                    for (int p = 0; p < t.powers[a]; ++p) v *= x[a];
                }
                acc += v;
            }
            dst[c] = acc;
        }
    }
    return out;
}

}  // namespace infospace
