#include "infospace/emotion.hpp"

#include <cmath>

namespace infospace::emotion {

namespace {

constexpr const char* kModule = "emotion_structure";

/// 2^-(2m+1) / (n(x) q_c), the common normalization of the scalar
/// contractions.
TensorField contraction_scale(const TextPair& pair, const InfoConstants& k) {
    TensorField s = TensorField::scalar(pair.text.lattice());
    const double front = std::ldexp(1.0, -(2 * pair.m + 1)) / k.q_c;
    for (std::size_t site = 0; site < s.lattice().site_count(); ++site) {
        s.value(site) = front / pair.n_field.value(site);
    }
    return s;
}

std::vector<std::pair<int, int>> diagonal_pairs(int count) {
    std::vector<std::pair<int, int>> p(count);
    for (int i = 0; i < count; ++i) p[i] = {i, i};
    return p;
}

/// het(X) contracted against the lowered counterpart over all m original
/// slots; the appended derivative slot stays free (covariant).
TensorField stream_core(const TensorField& derived, const TensorField& counterpart,
                        const TextPair& pair, const InfoConstants& k) {
    const TensorField het = heterogeneity(derived, k.lambda_c);
    const TensorField low = lower_all(counterpart);
    const auto pairs = diagonal_pairs(pair.m);
    TensorField core = contract(het, low, pairs);
    // Two written orderings plus one term per slot carrying the derivative.
    const double multiplicity = 2.0 * pair.m;
    return raise_lower(mul_scalar(scale(core, multiplicity), contraction_scale(pair, k)), 0);
}

}  // namespace

void TextPair::validate() const {
    if (text.rank() != m || perception.rank() != m) {
        fail(ErrorCode::shape_mismatch, kModule, "TextPair",
             "text and perception tensors must both have rank m");
    }
    if (!(text.lattice() == perception.lattice()) || !(text.lattice() == n_field.lattice())) {
        fail(ErrorCode::shape_mismatch, kModule, "TextPair", "fields live on different lattices");
    }
    if (n_field.rank() != 0) {
        fail(ErrorCode::shape_mismatch, kModule, "TextPair", "n must be a scalar field");
    }
    for (std::size_t s = 0; s < n_field.lattice().site_count(); ++s) {
        const double n = n_field.value(s);
        if (!(n >= 1.0) || std::nearbyint(n) != n) {
            fail(ErrorCode::invalid_input, kModule, "TextPair",
                 "n must be a positive integer everywhere");
        }
    }
}

TensorField dot_field(const TensorField& a, const TensorField& b) {
    if (a.rank() != 1 || b.rank() != 1) {
        fail(ErrorCode::rank_error, kModule, "dot_field", "rank-1 fields required");
    }
    TensorField out = TensorField::scalar(a.lattice());
    for (std::size_t s = 0; s < a.lattice().site_count(); ++s) {
        auto va = a.site_components(s);
        auto vb = b.site_components(s);
        out.value(s) = va[0] * vb[0] - va[1] * vb[1] - va[2] * vb[2] - va[3] * vb[3];
    }
    return out;
}

TensorField ddot_field(const TensorField& a, const TensorField& b) {
    if (a.rank() != 2 || b.rank() != 2) {
        fail(ErrorCode::rank_error, kModule, "ddot_field", "rank-2 fields required");
    }
    TensorField out = TensorField::scalar(a.lattice());
    for (std::size_t s = 0; s < a.lattice().site_count(); ++s) {
        auto va = a.site_components(s);
        auto vb = b.site_components(s);
        double acc = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                acc += metric_sign(i) * metric_sign(j) * va[i * 4 + j] * vb[i * 4 + j];
        out.value(s) = acc;
    }
    return out;
}

TensorField bilinear_field(const TensorField& u, const TensorField& w, const TensorField& v) {
    if (u.rank() != 1 || v.rank() != 1 || w.rank() != 2) {
        fail(ErrorCode::rank_error, kModule, "bilinear_field", "rank-1, rank-2, rank-1 required");
    }
    TensorField out = TensorField::scalar(u.lattice());
    for (std::size_t s = 0; s < u.lattice().site_count(); ++s) {
        auto vu = u.site_components(s);
        auto vw = w.site_components(s);
        auto vv = v.site_components(s);
        double acc = 0.0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                acc += metric_sign(i) * metric_sign(j) * vu[i] * vw[i * 4 + j] * vv[j];
        out.value(s) = acc;
    }
    return out;
}

TensorField text_emotion(const TextPair& pair, const InfoConstants& k) {
    pair.validate();
    const auto pairs = diagonal_pairs(pair.m);
    TensorField core = contract(pair.perception, lower_all(pair.text), pairs);
    // [D.T + T.D] with equal real scalar halves.
    return mul_scalar(scale(core, 2.0), contraction_scale(pair, k));
}

TensorField text_stream(const TextPair& pair, const InfoConstants& k) {
    pair.validate();
    return stream_core(pair.text, pair.perception, pair, k);
}

TensorField context_stream(const TextPair& pair, const InfoConstants& k) {
    pair.validate();
    return stream_core(pair.perception, pair.text, pair, k);
}

TensorField psi_base(const TextPair& pair, const InfoConstants& k) {
    pair.validate();
    const TensorField het_t = heterogeneity(pair.text, k.lambda_c);
    TensorField het_d = heterogeneity(pair.perception, k.lambda_c);
    for (int slot = 0; slot < pair.m; ++slot) het_d = raise_lower(het_d, slot);
    het_d = raise_lower(het_d, pair.m);  // derivative slot raised
    const auto pairs = diagonal_pairs(pair.m + 1);
    TensorField core = contract(het_t, het_d, pairs);
    return mul_scalar(scale(core, 2.0 * pair.m), contraction_scale(pair, k));
}

StreamSet build_streamset(const TextPair& pair, const InfoConstants& k) {
    pair.validate();
    StreamSet s;
    s.i_stream = text_stream(pair, k);
    s.b_stream = context_stream(pair, k);
    s.j = scale(field_tensor(s.i_stream), k.lambda_c);
    s.j_dual = dual_tensor(s.j);
    s.h = scale(field_tensor(s.b_stream), k.lambda_c);
    s.h_dual = dual_tensor(s.h);

    const auto prefactor = [&](const TensorField& x) {
        const TensorField div = four_divergence(x, 0, k.lambda_c);
        const TensorField dal = dalembertian(x, k.lambda_c);
        TensorField out = constant_scalar(x.lattice(), 1.0);
        out = add(out, dot_field(x, x));
        out = add(out, div);
        out = add(out, dot_field(dal, dal));
        out = add(out, mul(div, div));
        return out;
    };
    s.k1 = prefactor(s.i_stream);
    s.k2 = prefactor(s.b_stream);
    return s;
}

std::pair<std::map<std::string, TensorField>, TensorField> context_emotion(
    const TextPair& pair, const StreamSet& st, const TensorField& psi0, const InfoConstants& k) {
    pair.validate();
    const double lc = k.lambda_c;

    const TensorField& i_s = st.i_stream;
    const TensorField& b_s = st.b_stream;
    const TensorField div_i = four_divergence(i_s, 0, lc);
    const TensorField div_b = four_divergence(b_s, 0, lc);
    const TensorField dal_i = dalembertian(i_s, lc);
    const TensorField dal_b = dalembertian(b_s, lc);

    // Divergences of the antisymmetric tensors on either slot.
    const TensorField dj = four_divergence(st.j, 0, lc);
    const TensorField dj2 = four_divergence(st.j, 1, lc);
    const TensorField djd = four_divergence(st.j_dual, 0, lc);
    const TensorField djd2 = four_divergence(st.j_dual, 1, lc);
    const TensorField dh = four_divergence(st.h, 0, lc);
    const TensorField dh2 = four_divergence(st.h, 1, lc);
    const TensorField dhd = four_divergence(st.h_dual, 0, lc);
    const TensorField dhd2 = four_divergence(st.h_dual, 1, lc);

    std::map<std::string, TensorField> terms;
    terms.emplace("psi_0", psi0);

    const auto self_action = [&](const TensorField& x, const TensorField& div,
                                 const TensorField& dal) {
        TensorField out = dot_field(x, x);
        out = add(out, div);
        out = add(out, mul(div, div));
        out = add(out, dot_field(dal, dal));
        return out;
    };
    terms.emplace("psi_I", self_action(i_s, div_i, dal_i));
    terms.emplace("psi_B", self_action(b_s, div_b, dal_b));

    const auto tensor_self = [&](const TensorField& w, const TensorField& wd,
                                 const TensorField& dw, const TensorField& dwd) {
        TensorField out = ddot_field(w, w);
        out = add(out, ddot_field(wd, wd));
        out = add(out, scale(add(ddot_field(w, wd), ddot_field(wd, w)), 0.5));
        out = add(out, dot_field(dw, dw));
        out = add(out, dot_field(dwd, dwd));
        out = add(out, scale(dot_field(dwd, dw), 0.5));
        out = add(out, scale(dot_field(dw, dwd), 0.5));
        return out;
    };
    terms.emplace("psi_J", tensor_self(st.j, st.j_dual, dj, djd));
    terms.emplace("psi_H", tensor_self(st.h, st.h_dual, dh, dhd));

    {
        TensorField out = dot_field(i_s, b_s);
        out = add(out, mul(div_i, div_b));
        out = add(out, dot_field(dal_i, dal_b));
        terms.emplace("psi_IB", out);
    }

    // Vector-tensor couplings. The J-couplings keep all four divergence
    // pairings; the H-couplings carry only the undualized ones.
    const auto vec_tensor_j = [&](const TensorField& x, const TensorField& dal_x,
                                  const TensorField& pref) {
        TensorField out = add(bilinear_field(x, st.j, x), bilinear_field(x, st.j_dual, x));
        out = add(out, dot_field(dj, x));
        out = add(out, dot_field(dj2, x));
        out = add(out, dot_field(djd, x));
        out = add(out, dot_field(djd2, x));
        out = add(out, bilinear_field(dal_x, st.j, dal_x));
        out = add(out, bilinear_field(dal_x, st.j_dual, dal_x));
        out = add(out, scale(dot_field(djd, dj), 0.5));
        out = add(out, scale(dot_field(djd2, dj), 0.5));
        return mul(out, pref);
    };
    terms.emplace("psi_IJ", vec_tensor_j(i_s, dal_i, st.k1));
    terms.emplace("psi_BJ", vec_tensor_j(b_s, dal_b, st.k2));

    const auto vec_tensor_h = [&](const TensorField& x, const TensorField& dal_x,
                                  const TensorField& pref) {
        TensorField out = add(bilinear_field(x, st.h, x), bilinear_field(x, st.h_dual, x));
        out = add(out, dot_field(dh, x));
        out = add(out, dot_field(dh2, x));
        out = add(out, bilinear_field(dal_x, st.h, dal_x));
        out = add(out, bilinear_field(dal_x, st.h_dual, dal_x));
        out = add(out, scale(dot_field(dhd, dh), 0.5));
        out = add(out, scale(dot_field(dhd2, dh), 0.5));
        return mul(out, pref);
    };
    terms.emplace("psi_IH", vec_tensor_h(i_s, dal_i, st.k1));
    terms.emplace("psi_BH", vec_tensor_h(b_s, dal_b, st.k2));

    {
        TensorField out = ddot_field(st.j, st.h);
        out = add(out, ddot_field(st.j_dual, st.h_dual));
        out = add(out, ddot_field(st.j_dual, st.h));
        out = add(out, ddot_field(st.j, st.h_dual));
        terms.emplace("psi_JH", out);
    }

    // Fixed accumulation order for reproducibility.
    static const char* order[] = {"psi_0",  "psi_I",  "psi_B",  "psi_J",  "psi_H", "psi_IB",
                                  "psi_IJ", "psi_BJ", "psi_IH", "psi_BH", "psi_JH"};
    TensorField total = TensorField::scalar(pair.text.lattice());
    for (const char* name : order) total = add(total, terms.at(name));
    return {std::move(terms), std::move(total)};
}

std::pair<std::map<std::string, TensorField>, TensorField> implied_sense(
    const TensorField& mu, const TensorField& psi, const StreamSet& st, const Lattice4& lattice,
    const InfoConstants& k) {
    if (mu.rank() != 0 || psi.rank() != 0) {
        fail(ErrorCode::rank_error, kModule, "implied_sense", "mu and psi must be scalar fields");
    }
    if (!(mu.lattice() == lattice) || !(psi.lattice() == lattice)) {
        fail(ErrorCode::shape_mismatch, kModule, "implied_sense", "fields must share the lattice");
    }
    const double lc = k.lambda_c;

    const TensorField grad_mu = gradient_append(mu);    // rank 1, covariant, plain values
    const TensorField grad_psi = gradient_append(psi);
    const TensorField dal_mu = dalembertian(mu, lc);
    const TensorField dal_psi = dalembertian(psi, lc);

    // (lambda_c d_a f)(lambda_c d^a g) on covariant plain gradients.
    const auto grad_dot = [&](const TensorField& a, const TensorField& b) {
        TensorField out = TensorField::scalar(lattice);
        for (std::size_t s = 0; s < lattice.site_count(); ++s) {
            auto va = a.site_components(s);
            auto vb = b.site_components(s);
            out.value(s) =
                lc * lc * (va[0] * vb[0] - va[1] * vb[1] - va[2] * vb[2] - va[3] * vb[3]);
        }
        return out;
    };

    std::map<std::string, TensorField> terms;
    {
        TensorField out = dal_mu;
        out = add(out, grad_dot(grad_mu, grad_mu));
        out = add(out, mul(dal_mu, dal_mu));
        terms.emplace("gamma_mu", out);
    }
    {
        TensorField out = dal_psi;
        out = add(out, grad_dot(grad_psi, grad_psi));
        out = add(out, mul(dal_psi, dal_psi));
        terms.emplace("gamma_psi", out);
    }
    terms.emplace("gamma_mupsi", add(grad_dot(grad_mu, grad_psi), mul(dal_mu, dal_psi)));

    {
        TensorField out = TensorField::scalar(lattice);
        for (std::size_t s = 0; s < lattice.site_count(); ++s) {
            const FourVector x = lattice.coordinate(lattice.unflat(s));
            const FourVector xl = x.lowered();
            auto gm = grad_mu.site_components(s);
            auto gp = grad_psi.site_components(s);
            auto iv = st.i_stream.site_components(s);
            auto bv = st.b_stream.site_components(s);
            double acc = 0.0;
            for (int a = 0; a < 4; ++a) {
                // Contravariant total: raised gradients plus the streams.
                const double v = lc * metric_sign(a) * (gm[a] + gp[a]) + iv[a] + bv[a];
                acc += xl[a] * v / lc;
            }
            auto jv = st.j.site_components(s);
            auto jdv = st.j_dual.site_components(s);
            auto hv = st.h.site_components(s);
            auto hdv = st.h_dual.site_components(s);
            double moment = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    const double w =
                        jv[a * 4 + b] + jdv[a * 4 + b] + hv[a * 4 + b] + hdv[a * 4 + b];
                    moment += (xl[a] / lc) * w * (xl[b] / lc);
                }
            out.value(s) = acc + moment;
        }
        terms.emplace("gamma_x", out);
    }

    static const char* order[] = {"gamma_mu", "gamma_psi", "gamma_mupsi", "gamma_x"};
    TensorField total = TensorField::scalar(lattice);
    for (const char* name : order) total = add(total, terms.at(name));
    return {std::move(terms), std::move(total)};
}

Breakdown assemble_gie(const TextPair& pair, const InfoConstants& k) {
    pair.validate();
    Breakdown out;
    out.mu = text_emotion(pair, k);
    const StreamSet streams = build_streamset(pair, k);
    const TensorField psi0 = psi_base(pair, k);
    auto [psi_terms, psi] = context_emotion(pair, streams, psi0, k);
    out.psi_terms = std::move(psi_terms);
    out.psi = std::move(psi);
    auto [gamma_terms, gamma] =
        implied_sense(out.mu, out.psi, streams, pair.text.lattice(), k);
    out.gamma_terms = std::move(gamma_terms);
    out.gamma = std::move(gamma);
    out.q = add(add(out.mu, out.gamma), out.psi);
    out.q_field = scale(mul(pair.n_field, out.q), k.q_c);
    for (std::size_t s = 0; s < out.q.lattice().site_count(); ++s) {
        if (std::abs(out.q.value(s)) > 1.0) out.bound_violations.push_back(s);
    }
    return out;
}

}  // namespace infospace::emotion
