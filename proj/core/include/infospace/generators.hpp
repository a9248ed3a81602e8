#pragma once

#include <vector>

#include "infospace/tensor_field.hpp"

namespace infospace {

/// One monomial coeff * (x^0)^p0 (x^1)^p1 (x^2)^p2 (x^3)^p3.
struct MonomialTerm {
    double coeff = 0.0;
    std::array<int, 4> powers{0, 0, 0, 0};
};

/// Analytic field source: a polynomial in the site coordinates per
/// component. Constant and linear sources lower to this form.
struct FieldGenerator {
    int rank = 0;
    std::vector<Variance> variance;                 // empty => all contravariant
    std::vector<std::vector<MonomialTerm>> terms;   // per component (4^rank)

    static FieldGenerator constant(int rank, std::vector<double> values);
    static FieldGenerator constant_scalar_value(double value);

    void validate() const;
    TensorField realize(const Lattice4& lattice) const;
};

}  // namespace infospace
