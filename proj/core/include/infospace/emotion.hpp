#pragma once

#include <map>
#include <string>
#include <vector>

#include "infospace/constants.hpp"
#include "infospace/lattice_ops.hpp"
#include "infospace/tensor_field.hpp"

namespace infospace::emotion {

/// Text tensor, perception tensor and the elementary-volume count sharing
/// one lattice. Both tensors are rank m, all slots contravariant; n >= 1
/// pointwise.
struct TextPair {
    TensorField text;        // T, rank m
    TensorField perception;  // D, rank m
    TensorField n_field;     // rank 0, positive integer counts
    int m = 0;

    void validate() const;
};

/// Stream vectors and the antisymmetric tensors built from them, plus the
/// k1/k2 prefactors entering the mixed contributions.
struct StreamSet {
    TensorField i_stream;  // rank 1, contravariant
    TensorField b_stream;  // rank 1, contravariant
    TensorField j;         // rank 2, antisymmetric
    TensorField j_dual;
    TensorField h;         // rank 2, antisymmetric
    TensorField h_dual;
    TensorField k1;        // rank 0
    TensorField k2;        // rank 0
};

/// Named decomposition of the dimensionless emotion q = mu + gamma + psi,
/// with every sub-term kept for diagnostics, the assembled Q field and the
/// sites violating the |q| <= 1 bound (reported, never clamped).
struct Breakdown {
    TensorField mu;
    std::map<std::string, TensorField> psi_terms;
    TensorField psi;
    std::map<std::string, TensorField> gamma_terms;
    TensorField gamma;
    TensorField q;
    TensorField q_field;  // Q = q_c * n * q (emotion units)
    std::vector<std::size_t> bound_violations;
    bool bound_ok() const { return bound_violations.empty(); }
};

/// Reference logic values of q used by test fixtures.
inline constexpr double q_true = 1.0;
inline constexpr double q_false = -1.0;
inline constexpr double q_uncertain = 0.0;

/// Scalar text emotion: 2^-(2m+1)/(n q_c) * [D.T + T.D], contracted over
/// all m slots through the metric.
TensorField text_emotion(const TextPair& pair, const InfoConstants& k);

/// Text stream I: the text's heterogeneity contracted against the
/// perception tensor over all original slots, both orderings summed, one
/// term per slot carrying the derivative, scaled like the text emotion.
/// Returned contravariant.
TensorField text_stream(const TextPair& pair, const InfoConstants& k);

/// Context stream B: mirror of text_stream with the derivative on the
/// perception tensor.
TensorField context_stream(const TextPair& pair, const InfoConstants& k);

/// Base text-to-context contribution psi_0: heterogeneity of T contracted
/// with heterogeneity of D over all m+1 slots, both orderings and slot
/// assignments summed.
TensorField psi_base(const TextPair& pair, const InfoConstants& k);

/// Builds I, B, their antisymmetrized lambda_c-scaled gradients J and H
/// with duals, and the k1/k2 prefactors.
StreamSet build_streamset(const TextPair& pair, const InfoConstants& k);

/// All eleven context-emotion contributions and their sum.
std::pair<std::map<std::string, TensorField>, TensorField> context_emotion(
    const TextPair& pair, const StreamSet& streams, const TensorField& psi0,
    const InfoConstants& k);

/// Implied-sense contributions gamma_mu, gamma_psi, gamma_mupsi, gamma_x
/// and their sum.
std::pair<std::map<std::string, TensorField>, TensorField> implied_sense(
    const TensorField& mu, const TensorField& psi, const StreamSet& streams,
    const Lattice4& lattice, const InfoConstants& k);

/// Full pipeline mu -> streams -> psi -> gamma -> q -> Q with the bound
/// check. Violations of |q| <= 1 are listed, not fatal.
Breakdown assemble_gie(const TextPair& pair, const InfoConstants& k);

// Pointwise helpers shared with the dynamics module and tests.

/// Minkowski pairing of two contravariant rank-1 fields -> scalar field.
TensorField dot_field(const TensorField& a, const TensorField& b);
/// Double contraction A^{ab} B_{ab} of contravariant rank-2 fields.
TensorField ddot_field(const TensorField& a, const TensorField& b);
/// u_a W^{ab} v_b for contravariant rank-1 u, v and rank-2 W.
TensorField bilinear_field(const TensorField& u, const TensorField& w, const TensorField& v);

}  // namespace infospace::emotion
