#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "infospace/constants.hpp"
#include "infospace/kinematics.hpp"
#include "infospace/tensor_field.hpp"

namespace infospace::dynamics {

/// Ordered node sequence of a discretized trajectory. Segments evaluated
/// for action must be timelike; zero segments contribute nothing.
struct Path4 {
    std::vector<FourVector> nodes;
};

/// Builds the straight M-segment chord between two endpoints.
Path4 straight_path(const FourVector& a, const FourVector& b, int segments);

/// One-source interaction potential A = (Q/lambda_c^2) a / (s^2 + sigma),
/// with s^2 the squared four-interval in lambda_c units and sigma an
/// optional softening of the light-cone singularity.
struct PotentialSpec {
    double q_source = 0.0;                       // bit^3/s
    std::array<double, 4> a{1.0, 0.0, 0.0, 0.0}; // dimensionless direction
    double s_regularizer = 0.0;                  // added to s^2, >= 0

    /// Source from a pair of emotions combined as Q1 Q2 / (Q1 + Q2).
    static PotentialSpec from_pair(double q_gie1, double q_gie2);
};

/// Two-body interaction parameters in dimensionless form: volume counts
/// n_i, emotion fractions q_i (Q_i = q_c n_i q_i) and 3-velocities.
struct InteractionParams {
    double n1 = 1.0;
    double q1 = 0.0;
    double n2 = 1.0;
    double q2 = 0.0;
    Vec3 beta1{0.0, 0.0, 0.0};
    Vec3 beta2{0.0, 0.0, 0.0};

    static InteractionParams from_gie(double q_gie1, double q_gie2, const Vec3& b1, const Vec3& b2,
                                      const InfoConstants& k);

    double n_plus() const { return n1 * n2; }
    double q_plus() const { return q1 / n2 + q2 / n1; }
    double q_minus() const { return q1 / n2 - q2 / n1; }
    double q12() const;   // q1 q2 / q_plus, errors on zero denominator
    double q_pm() const;  // q_minus / q_plus
};

/// GIE density and the dimensionless current direction; the assembled
/// current is their pointwise product.
struct CurrentDensity {
    TensorField rho_q;           // rank 0
    TensorField j_dimensionless; // rank 1, contravariant

    TensorField assembled() const;
};

/// A^a at a point. Throws singular_potential when s^2 + sigma <= 0.
FourVector potential_single(const PotentialSpec& spec, const FourVector& x,
                            const InfoConstants& k);

/// Q1 Q2 / (Q1 + Q2); invalid for annihilating pair.
double combine_gie(double q1, double q2);

/// f = 1/2 [1 + q_pm * (beta_minus . beta_plus)] evaluated as written.
/// Identically 1/2 for normalized four-velocities.
double interaction_factor_f(const InteractionParams& p, const InfoConstants& k);

/// p = Q v with v the four-velocity for beta.
FourVector momentum(double q_gie, const Vec3& beta, const InfoConstants& k);

/// Effective momentum of the two-body system,
/// P = q_c nu_c n+ q+ [f beta+ + q12 a / (s^2+sigma)].
FourVector effective_momentum(const InteractionParams& p, const PotentialSpec& spec,
                              const FourVector& x, const InfoConstants& k);

/// Free Lagrangian value -Q nu_c^2 (constant in beta).
double lagrangian_free(double q_gie, const Vec3& beta, const InfoConstants& k);

/// Interaction Lagrangian -q_c nu_c^2 n+ q+ [f (beta+ . beta+) +
/// q12 (a . beta+)/(s^2+sigma)].
double lagrangian_interaction(const InteractionParams& p, const PotentialSpec& spec,
                              const FourVector& x, const InfoConstants& k);

/// Dimensionless Lagrangian of a path point: value and analytic gradients
/// used by the discrete-action minimizer. Everything here is expressed in
/// the natural normalization (value = L / (q_c nu_c^2)); the action
/// operation restores units at the boundary.
class Lagrangian {
  public:
    virtual ~Lagrangian() = default;
    virtual double value(const FourVector& x, const Vec3& beta) const = 0;
    virtual FourVector grad_x(const FourVector& x, const Vec3& beta) const;
    virtual Vec3 grad_beta(const FourVector& x, const Vec3& beta) const;
};

class FreeLagrangian final : public Lagrangian {
  public:
    FreeLagrangian(double q_gie, const InfoConstants& k) : q_hat_(q_gie / k.q_c) {}
    double value(const FourVector&, const Vec3&) const override { return -q_hat_; }

  private:
    double q_hat_;
};

class InteractionLagrangian final : public Lagrangian {
  public:
    /// The path plays the role of body 1; body 2 moves with params.beta2.
    /// flip_sign switches the global action sign for sensitivity studies.
    InteractionLagrangian(InteractionParams params, PotentialSpec spec, const InfoConstants& k,
                          bool flip_sign = false);
    double value(const FourVector& x, const Vec3& beta) const override;
    FourVector grad_x(const FourVector& x, const Vec3& beta) const override;
    Vec3 grad_beta(const FourVector& x, const Vec3& beta) const override;

  private:
    InteractionParams params_;
    PotentialSpec spec_;
    double lambda_c_;
    double sign_;
};

/// Action integral over a discretized path: per segment, d_tau from the
/// timelike interval, beta from the slope, the Lagrangian at the midpoint.
/// Returns q_c nu_c * sum(L_hat * sqrt(interval)), which carries bit^5/s^2
/// units in SI mode. Throws non_timelike_path for spacelike or lightlike
/// nonzero segments.
double action(const Path4& path, const Lagrangian& lagrangian, const InfoConstants& k);

struct OptimizerOptions {
    double tol = 1e-8;        // gradient max-norm target (natural units)
    int max_iters = 20000;
    double initial_step = 1.0;
};

struct MinimizeResult {
    Path4 path;
    double action_value = 0.0;   // same units as action()
    double grad_max_norm = 0.0;  // natural units
    int iterations = 0;
    bool converged = false;
    std::vector<double> action_trace;
};

/// Non-convergence carries the best iterate found.
class ConvergenceError : public Error {
  public:
    ConvergenceError(MinimizeResult best, const std::string& message)
        : Error(ErrorCode::convergence_failure, "dynamics_action", "minimize_action", message),
          best_(std::move(best)) {}
    const MinimizeResult& best() const { return best_; }

  private:
    MinimizeResult best_;
};

/// Gradient descent with backtracking line search on the discrete action.
/// Interior nodes move, endpoints stay pinned. The initial path defaults
/// to the straight chord; callers may supply a perturbed one.
MinimizeResult minimize_action(const FourVector& a, const FourVector& b,
                               const Lagrangian& lagrangian, int segments,
                               const OptimizerOptions& opts, const InfoConstants& k,
                               const std::optional<Path4>& initial = std::nullopt);

/// Analytic gradient of the discrete action with respect to interior node
/// coordinates, flattened 4 per node. Exposed for finite-difference
/// validation.
std::vector<double> action_gradient(const Path4& path, const Lagrangian& lagrangian);
/// The dimensionless objective the optimizer minimizes (action / (q_c nu_c)).
double action_objective(const Path4& path, const Lagrangian& lagrangian);

struct MaxwellResiduals {
    TensorField res1;        // 1/2 d_a G^{ab} - 4 pi j^b
    TensorField res2;        // 1/2 d_a ~G^{ab}
    TensorField continuity;  // d^a j_a
};

/// Residuals of the field-strength equations for a given potential and
/// current; computes residuals of supplied fields, never solves for them.
MaxwellResiduals maxwell_residuals(const TensorField& potential, const CurrentDensity& current,
                                   const InfoConstants& k);

}  // namespace infospace::dynamics
