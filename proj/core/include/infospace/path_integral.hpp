#pragma once

#include <complex>
#include <optional>

#include "infospace/dynamics.hpp"
#include "infospace/lattice.hpp"
#include "infospace/tensor_field.hpp"

namespace infospace::pathint {

using Complex = std::complex<double>;

/// Box truncation of momentum space: symmetric cutoffs [-P, P] per axis and
/// a midpoint-rule point count per axis. Momenta are expressed in natural
/// units (q_c*nu_c = 1); the 1/(8 pi^4) measure is fixed.
struct MomentumGrid {
    std::array<double, 4> cutoff{1.0, 1.0, 1.0, 1.0};
    std::array<int, 4> points{8, 8, 8, 8};

    void validate() const;
    double cell_volume() const {
        return 16.0 * cutoff[0] * cutoff[1] * cutoff[2] * cutoff[3] /
               (static_cast<double>(points[0]) * points[1] * points[2] * points[3]);
    }
};

enum class TransferKind { FREE, INTERACTING };

/// One transfer computation: endpoints, the momentum-space truncation, an
/// end-point domain standing in for the infinite normalization region, and
/// the velocity configuration used for the quantization step.
struct TransferProblem {
    TransferKind kind = TransferKind::FREE;
    FourVector x_a{};
    FourVector x_b{};
    double q_gie = 1.0;                           // FREE
    dynamics::InteractionParams params{};         // INTERACTING
    dynamics::PotentialSpec potential{};          // INTERACTING
    bool position_dependent = false;              // experimental P(x) branch
    MomentumGrid grid{};
    std::optional<Lattice4> end_lattice{};
    double mean_speed_sq = 0.0;                   // feeds displacement quantization
};

/// Results bundle; rho integrates to one over the end lattice.
struct TransferResult {
    Complex amplitude{};
    double omega = 0.0;
    double n_norm = 1.0;
    TensorField rho;
    FourVector mean_displacement{};
    QuantizedDisplacement quantized{};
};

/// Unnormalized midpoint-rule amplitude for a displacement, evaluated as
/// the product of per-axis sums (the integrand separates over a box grid).
Complex amplitude_unnormalized(const FourVector& dx, const MomentumGrid& grid,
                               const InfoConstants& k);

/// Same with the grid shifted by a momentum offset (natural units); the
/// offset realizes the experimental position-dependent effective-momentum
/// branch.
Complex amplitude_unnormalized_offset(const FourVector& dx, const MomentumGrid& grid,
                                      const InfoConstants& k, const FourVector& offset);

/// Free transition amplitude with optional normalization constant.
/// Throws undersampled_phase when the per-cell phase advance exceeds pi.
Complex amplitude_free(const TransferProblem& problem, const InfoConstants& k,
                       double n_norm = 1.0);

/// Interacting amplitude over the effective-momentum grid. With the
/// experimental position-dependent branch enabled, the grid is centered on
/// the classical effective momentum at the chord midpoint, which can raise
/// singular_potential.
Complex amplitude_interacting(const TransferProblem& problem, const InfoConstants& k,
                              double n_norm = 1.0);

/// Normalization over a finite end-point domain: N such that
/// sum |K_unnorm/N|^2 * cell = 1. Degenerate when the amplitude vanishes
/// on the whole domain.
double normalize(const TransferProblem& problem, const Lattice4& domain, const InfoConstants& k);

/// |K|^2.
double probability(Complex k_amplitude);

/// Probability density over the end lattice. The default form is the
/// normalized squared amplitude per unit four-volume (integrates to one);
/// `derivative_form` selects the central-difference directional derivative
/// of the cell probability along the lattice diagonal instead.
TensorField probability_density(const TransferProblem& problem, const Lattice4& end_lattice,
                                const InfoConstants& k, bool derivative_form = false);

/// Density-weighted mean displacement plus its quantization.
std::pair<FourVector, QuantizedDisplacement> mean_displacement(const TransferProblem& problem,
                                                               const Lattice4& end_lattice,
                                                               const InfoConstants& k);

/// Same, from an explicitly supplied density field (used when the density
/// comes from elsewhere or from a synthetic construction).
std::pair<FourVector, QuantizedDisplacement> mean_displacement_from_density(
    const TensorField& rho, const FourVector& x_a, double mean_speed_sq, const InfoConstants& k);

/// Largest per-cell phase advance over the end domain (or the single
/// displacement when no domain is given); must stay below pi.
double phase_sampling_ratio(const TransferProblem& problem, const InfoConstants& k);

/// Full pipeline: normalize, amplitude at x_b, density, mean, quantization.
TransferResult compute_transfer(const TransferProblem& problem, const InfoConstants& k);

}  // namespace infospace::pathint
