#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace infospace {

/// Fixed-shape pairwise tree sum. The reduction order depends only on the
/// element count, so results are bit-reproducible regardless of how the
/// inputs were produced, and the tree keeps rounding error at O(log n).
template <typename T>
T pairwise_sum(std::span<const T> values) {
    const std::size_t n = values.size();
    if (n == 0) return T{};
    if (n <= 8) {
        T acc = values[0];
        for (std::size_t i = 1; i < n; ++i) acc += values[i];
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

inline double pairwise_sum(std::span<const double> values) {
    return pairwise_sum<double>(values);
}
inline std::complex<double> pairwise_sum(std::span<const std::complex<double>> values) {
    return pairwise_sum<std::complex<double>>(values);
}

/// Summary statistics with a deterministic accumulation order.
struct FieldStats {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double l2 = 0.0;
};

inline FieldStats compute_stats(std::span<const double> values) {
    FieldStats st;
    if (values.empty()) return st;
    st.min = values[0];
    st.max = values[0];
    for (double v : values) {
        if (v < st.min) st.min = v;
        if (v > st.max) st.max = v;
    }
    st.mean = pairwise_sum(values) / static_cast<double>(values.size());
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) sq[i] = values[i] * values[i];
    st.l2 = std::sqrt(pairwise_sum(std::span<const double>(sq)));
    return st;
}

}  // namespace infospace
