#include "infospace/dynamics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "infospace/lattice_ops.hpp"

namespace infospace::dynamics {

namespace {
constexpr const char* kModule = "dynamics_action";

double interval_sq_lambda(const FourVector& x, double lambda_c) {
    return minkowski_dot(x, x) / (lambda_c * lambda_c);
}

/// d(four_beta)/d(beta_k): columns of the Jacobian of gamma*(1, beta).
FourVector four_beta_jacobian_col(const Vec3& beta, int kcol) {
    const double g = lorentz_gamma(beta);
    const double g3 = g * g * g;
    FourVector d;
    d[0] = g3 * beta[kcol];
    for (int i = 0; i < 3; ++i) d[i + 1] = (i == kcol ? g : 0.0) + g3 * beta[kcol] * beta[i];
    return d;
}
}  // namespace

Path4 straight_path(const FourVector& a, const FourVector& b, int segments) {
    Path4 p;
    p.nodes.reserve(segments + 1);
    for (int i = 0; i <= segments; ++i) {
        const double t = static_cast<double>(i) / segments;
        p.nodes.push_back(a + (b - a) * t);
    }
    return p;
}

InteractionParams InteractionParams::from_gie(double q_gie1, double q_gie2, const Vec3& b1,
                                              const Vec3& b2, const InfoConstants& k) {
    InteractionParams p;
    p.n1 = 1.0;
    p.n2 = 1.0;
    p.q1 = q_gie1 / k.q_c;
    p.q2 = q_gie2 / k.q_c;
    p.beta1 = b1;
    p.beta2 = b2;
    return p;
}

double InteractionParams::q12() const {
    const double qp = q_plus();
    if (qp == 0.0) {
        fail(ErrorCode::invalid_input, kModule, "InteractionParams",
             "combined emotion q_plus vanishes");
    }
    return q1 * q2 / qp;
}

double InteractionParams::q_pm() const {
    const double qp = q_plus();
    if (qp == 0.0) {
        fail(ErrorCode::invalid_input, kModule, "InteractionParams",
             "combined emotion q_plus vanishes");
    }
    return q_minus() / qp;
}

TensorField CurrentDensity::assembled() const { return mul_scalar(j_dimensionless, rho_q); }

PotentialSpec PotentialSpec::from_pair(double q_gie1, double q_gie2) {
    PotentialSpec spec;
    spec.q_source = combine_gie(q_gie1, q_gie2);
    return spec;
}

FourVector potential_single(const PotentialSpec& spec, const FourVector& x,
                            const InfoConstants& k) {
    const double s2 = interval_sq_lambda(x, k.lambda_c);
    const double denom = s2 + spec.s_regularizer;
    if (!(denom > 0.0)) {
        fail(ErrorCode::singular_potential, kModule, "potential_single",
             "interval s^2 + softening must be positive (on/inside the light cone)");
    }
    const double front = spec.q_source / (k.lambda_c * k.lambda_c) / denom;
    return FourVector{front * spec.a[0], front * spec.a[1], front * spec.a[2], front * spec.a[3],
                      Unit::potential};
}

double combine_gie(double q1, double q2) {
    if (q1 + q2 == 0.0) {
        fail(ErrorCode::invalid_input, kModule, "combine_gie", "Q1 + Q2 must be nonzero");
    }
    return q1 * q2 / (q1 + q2);
}

double interaction_factor_f(const InteractionParams& p, const InfoConstants&) {
    const FourVector bp = four_beta(p.beta1) + four_beta(p.beta2);
    const FourVector bm = four_beta(p.beta1) - four_beta(p.beta2);
    return 0.5 * (1.0 + p.q_pm() * minkowski_dot(bm, bp));
}

FourVector momentum(double q_gie, const Vec3& beta, const InfoConstants& k) {
    FourVector p = four_velocity(beta, k) * q_gie;
    p.unit = Unit::momentum;
    return p;
}

FourVector effective_momentum(const InteractionParams& p, const PotentialSpec& spec,
                              const FourVector& x, const InfoConstants& k) {
    const double s2 = interval_sq_lambda(x, k.lambda_c);
    const double denom = s2 + spec.s_regularizer;
    if (!(denom > 0.0)) {
        fail(ErrorCode::singular_potential, kModule, "effective_momentum",
             "interval s^2 + softening must be positive");
    }
    const FourVector bp = four_beta(p.beta1) + four_beta(p.beta2);
    const double f = interaction_factor_f(p, k);
    const double front = k.q_c * k.nu_c * p.n_plus() * p.q_plus();
    const double pot = p.q12() / denom;
    FourVector out;
    for (int a = 0; a < 4; ++a) out[a] = front * (f * bp[a] + pot * spec.a[a]);
    out.unit = Unit::momentum;
    return out;
}

double lagrangian_free(double q_gie, const Vec3& beta, const InfoConstants& k) {
    lorentz_gamma(beta);  // superluminal check
    return -q_gie * k.nu_c * k.nu_c;
}

double lagrangian_interaction(const InteractionParams& p, const PotentialSpec& spec,
                              const FourVector& x, const InfoConstants& k) {
    const InteractionLagrangian lag(p, spec, k);
    return k.q_c * k.nu_c * k.nu_c * lag.value(x, p.beta1);
}

FourVector Lagrangian::grad_x(const FourVector&, const Vec3&) const { return {}; }
Vec3 Lagrangian::grad_beta(const FourVector&, const Vec3&) const { return {0.0, 0.0, 0.0}; }

InteractionLagrangian::InteractionLagrangian(InteractionParams params, PotentialSpec spec,
                                             const InfoConstants& k, bool flip_sign)
    : params_(std::move(params)),
      spec_(std::move(spec)),
      lambda_c_(k.lambda_c),
      sign_(flip_sign ? 1.0 : -1.0) {}

double InteractionLagrangian::value(const FourVector& x, const Vec3& beta) const {
    InteractionParams p = params_;
    p.beta1 = beta;
    const double s2 = minkowski_dot(x, x) / (lambda_c_ * lambda_c_);
    const double denom = s2 + spec_.s_regularizer;
    if (!(denom > 0.0)) {
        fail(ErrorCode::singular_potential, kModule, "InteractionLagrangian",
             "interval s^2 + softening must be positive");
    }
    const FourVector bp = four_beta(p.beta1) + four_beta(p.beta2);
    const FourVector a{spec_.a[0], spec_.a[1], spec_.a[2], spec_.a[3]};
    const double f = 0.5 * (1.0 + p.q_pm() * minkowski_dot(four_beta(p.beta1) - four_beta(p.beta2), bp));
    return sign_ * p.n_plus() * p.q_plus() *
           (f * minkowski_dot(bp, bp) + p.q12() * minkowski_dot(a, bp) / denom);
}

FourVector InteractionLagrangian::grad_x(const FourVector& x, const Vec3& beta) const {
    InteractionParams p = params_;
    p.beta1 = beta;
    const double l2 = lambda_c_ * lambda_c_;
    const double s2 = minkowski_dot(x, x) / l2;
    const double denom = s2 + spec_.s_regularizer;
    const FourVector bp = four_beta(p.beta1) + four_beta(p.beta2);
    const FourVector a{spec_.a[0], spec_.a[1], spec_.a[2], spec_.a[3]};
    const double core = sign_ * p.n_plus() * p.q_plus() * p.q12() * minkowski_dot(a, bp);
    // d(1/denom)/dx^a = -(2 g_aa x^a / lambda_c^2) / denom^2
    FourVector g;
    for (int i = 0; i < 4; ++i) {
        g[i] = core * (-(2.0 * metric_sign(i) * x[i] / l2) / (denom * denom));
    }
    return g;
}

Vec3 InteractionLagrangian::grad_beta(const FourVector& x, const Vec3& beta) const {
    InteractionParams p = params_;
    p.beta1 = beta;
    const double s2 = minkowski_dot(x, x) / (lambda_c_ * lambda_c_);
    const double denom = s2 + spec_.s_regularizer;
    const FourVector b1 = four_beta(p.beta1);
    const FourVector b2 = four_beta(p.beta2);
    const FourVector bp = b1 + b2;
    const FourVector bm = b1 - b2;
    const FourVector a{spec_.a[0], spec_.a[1], spec_.a[2], spec_.a[3]};
    const double qpm = p.q_pm();
    const double f = 0.5 * (1.0 + qpm * minkowski_dot(bm, bp));
    const double front = sign_ * p.n_plus() * p.q_plus();
    Vec3 g{0.0, 0.0, 0.0};
    for (int kcol = 0; kcol < 3; ++kcol) {
        const FourVector db = four_beta_jacobian_col(beta, kcol);
        // d(bm.bp) = db.bp + bm.db ; d(bp.bp) = 2 db.bp ; d(a.bp) = a.db
        const double df = 0.5 * qpm * (minkowski_dot(db, bp) + minkowski_dot(bm, db));
        g[kcol] = front * (df * minkowski_dot(bp, bp) + f * 2.0 * minkowski_dot(db, bp) +
                           p.q12() * minkowski_dot(a, db) / denom);
    }
    return g;
}

namespace {

struct Segment {
    FourVector delta;
    FourVector mid;
    double interval_sq;  // minkowski_dot(delta, delta)
    Vec3 beta;
    bool zero;
};

Segment make_segment(const FourVector& from, const FourVector& to) {
    Segment s;
    s.delta = to - from;
    s.mid = (from + to) * 0.5;
    s.interval_sq = minkowski_dot(s.delta, s.delta);
    s.zero = s.delta[0] == 0.0 && s.delta[1] == 0.0 && s.delta[2] == 0.0 && s.delta[3] == 0.0;
    if (!s.zero) {
        if (!(s.interval_sq > 0.0)) {
            fail(ErrorCode::non_timelike_path, kModule, "action",
                 "path segment is not timelike");
        }
        s.beta = {s.delta[1] / s.delta[0], s.delta[2] / s.delta[0], s.delta[3] / s.delta[0]};
    } else {
        s.beta = {0.0, 0.0, 0.0};
    }
    return s;
}

}  // namespace

double action_objective(const Path4& path, const Lagrangian& lagrangian) {
    if (path.nodes.size() < 2) {
        fail(ErrorCode::invalid_input, kModule, "action", "a path needs at least two nodes");
    }
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
        const Segment seg = make_segment(path.nodes[i], path.nodes[i + 1]);
        if (seg.zero) continue;
        s += lagrangian.value(seg.mid, seg.beta) * std::sqrt(seg.interval_sq);
    }
    return s;
}

double action(const Path4& path, const Lagrangian& lagrangian, const InfoConstants& k) {
    return k.q_c * k.nu_c * action_objective(path, lagrangian);
}

std::vector<double> action_gradient(const Path4& path, const Lagrangian& lagrangian) {
    const std::size_t n = path.nodes.size();
    std::vector<double> grad((n - 2) * 4, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Segment seg = make_segment(path.nodes[i], path.nodes[i + 1]);
        if (seg.zero) continue;
        const double tau = std::sqrt(seg.interval_sq);
        const double lval = lagrangian.value(seg.mid, seg.beta);
        const FourVector lgx = lagrangian.grad_x(seg.mid, seg.beta);
        const Vec3 lgb = lagrangian.grad_beta(seg.mid, seg.beta);

        // d tau / d delta^a = g_aa delta^a / tau
        FourVector dtau;
        for (int a = 0; a < 4; ++a) dtau[a] = metric_sign(a) * seg.delta[a] / tau;
        // d beta_k / d delta^a
        // beta_k = delta^{k+1} / delta^0
        const auto add_node = [&](std::size_t node, double delta_sign) {
            if (node == 0 || node == n - 1) return;
            double* g = grad.data() + (node - 1) * 4;
            for (int a = 0; a < 4; ++a) {
                double db_term = 0.0;
                for (int kcol = 0; kcol < 3; ++kcol) {
                    double dbeta;
                    if (a == 0) {
                        dbeta = -seg.delta[kcol + 1] / (seg.delta[0] * seg.delta[0]);
                    } else {
                        dbeta = (a == kcol + 1) ? 1.0 / seg.delta[0] : 0.0;
                    }
                    db_term += lgb[kcol] * dbeta;
                }
                // midpoint moves with either node at weight 1/2
                g[a] += 0.5 * lgx[a] * tau + delta_sign * (db_term * tau + lval * dtau[a]);
            }
        };
        add_node(i, -1.0);      // delta decreases when the left node grows
        add_node(i + 1, 1.0);
    }
    return grad;
}

MinimizeResult minimize_action(const FourVector& a, const FourVector& b,
                               const Lagrangian& lagrangian, int segments,
                               const OptimizerOptions& opts, const InfoConstants& k,
                               const std::optional<Path4>& initial) {
    if (segments < 2) {
        fail(ErrorCode::invalid_input, kModule, "minimize_action", "segment count must be >= 2");
    }
    const FourVector chord = b - a;
    if (chord[0] == 0.0 && chord[1] == 0.0 && chord[2] == 0.0 && chord[3] == 0.0) {
        fail(ErrorCode::invalid_input, kModule, "minimize_action", "endpoints coincide");
    }
    if (!(minkowski_dot(chord, chord) > 0.0)) {
        fail(ErrorCode::non_timelike_path, kModule, "minimize_action",
             "endpoints must be timelike separated");
    }

    Path4 path = initial.value_or(straight_path(a, b, segments));
    if (static_cast<int>(path.nodes.size()) != segments + 1) {
        fail(ErrorCode::invalid_input, kModule, "minimize_action",
             "initial path node count must be segments + 1");
    }
    path.nodes.front() = a;
    path.nodes.back() = b;

    const auto objective = [&](const Path4& p) -> double {
        // Non-timelike trial steps are rejected by the line search.
        try {
            return action_objective(p, lagrangian);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::non_timelike_path ||
                e.code() == ErrorCode::singular_potential) {
                return std::numeric_limits<double>::infinity();
            }
            throw;
        }
    };

    MinimizeResult res;
    double s = objective(path);
    if (!std::isfinite(s)) {
        fail(ErrorCode::non_timelike_path, kModule, "minimize_action",
             "initial path is not timelike segment-wise");
    }
    res.action_trace.push_back(s);
    double step = opts.initial_step;

    // Once objective decreases fall below floating-point resolution the
    // strict Armijo test cannot certify any step; gradient contraction then
    // continues with a guarded fixed step.
    bool polish = false;
    double polish_step = 0.0;
    double s_current = s;
    const double ascent_guard = 64.0 * std::numeric_limits<double>::epsilon();

    const std::size_t dof = (path.nodes.size() - 2) * 4;
    for (int iter = 0; iter < opts.max_iters; ++iter) {
        const std::vector<double> g = action_gradient(path, lagrangian);
        double gmax = 0.0, gnorm2 = 0.0;
        for (double v : g) {
            gmax = std::max(gmax, std::abs(v));
            gnorm2 += v * v;
        }
        res.grad_max_norm = gmax;
        res.iterations = iter;
        if (gmax <= opts.tol) {
            res.converged = true;
            break;
        }

        if (!polish) {
            const double step_entering = step;
            bool accepted = false;
            for (int bt = 0; bt < 60; ++bt) {
                Path4 trial = path;
                for (std::size_t d = 0; d < dof; ++d) {
                    trial.nodes[1 + d / 4][d % 4] -= step * g[d];
                }
                const double st = objective(trial);
                // st < s keeps the test meaningful once the predicted
                // decrease underflows the objective's resolution.
                if (st < s && st <= s - 1e-4 * step * gnorm2) {
                    path = std::move(trial);
                    s = st;
                    accepted = true;
                    step *= 1.5;
                    break;
                }
                step *= 0.5;
            }
            if (accepted) {
                res.action_trace.push_back(s);
                continue;
            }
            polish = true;
            polish_step = std::max(0.25 * step_entering, 0.5 * opts.initial_step);
            s_current = s;
        }

        bool moved = false;
        while (polish_step > 1e-30) {
            Path4 trial = path;
            for (std::size_t d = 0; d < dof; ++d) {
                trial.nodes[1 + d / 4][d % 4] -= polish_step * g[d];
            }
            const double st = objective(trial);
            if (!std::isfinite(st) || st > s_current + ascent_guard * (1.0 + std::abs(s_current))) {
                polish_step *= 0.5;
                continue;
            }
            path = std::move(trial);
            s_current = st;
            if (st < s) s = st;
            moved = true;
            break;
        }
        res.action_trace.push_back(s);
        if (!moved) {
            res.path = path;
            res.action_value = k.q_c * k.nu_c * s;
            throw ConvergenceError(res, "line search stalled before reaching tolerance");
        }
    }

    res.path = path;
    res.action_value = k.q_c * k.nu_c * s;
    if (!res.converged) {
        throw ConvergenceError(res, "gradient tolerance not reached within max_iters");
    }
    return res;
}

MaxwellResiduals maxwell_residuals(const TensorField& potential, const CurrentDensity& current,
                                   const InfoConstants&) {
    const TensorField g = field_tensor(potential);
    const TensorField gd = dual_tensor(g);
    const TensorField j = current.assembled();
    if (!(j.lattice() == potential.lattice())) {
        fail(ErrorCode::shape_mismatch, kModule, "maxwell_residuals",
             "current and potential must share the lattice");
    }
    MaxwellResiduals out{
        add(scale(four_divergence(g, 0), 0.5), scale(j, -4.0 * std::numbers::pi)),
        scale(four_divergence(gd, 0), 0.5),
        four_divergence(j, 0),
    };
    return out;
}

}  // namespace infospace::dynamics
