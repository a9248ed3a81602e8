#include "infospace/path_integral.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "infospace/reduction.hpp"

namespace infospace::pathint {

namespace {
constexpr const char* kModule = "path_integral";
constexpr double kPi = std::numbers::pi;

/// Per-axis angular factor of the phase exp(-i p.dx / hbar_c) in natural
/// momentum units: q_c nu_c lambda_c / hbar_c = 2 pi in any unit mode.
std::array<double, 4> phase_omegas(const FourVector& dx, const InfoConstants& k) {
    std::array<double, 4> w{};
    for (int a = 0; a < 4; ++a) {
        const double dxhat = dx[a] / k.lambda_c;
        w[a] = (a == 0 ? -1.0 : 1.0) * 2.0 * kPi * dxhat;
    }
    return w;
}

Complex axis_sum(double omega, double cutoff, int n, double offset) {
    const double dp = 2.0 * cutoff / n;
    Complex acc{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
        const double p = -cutoff + (j + 0.5) * dp + offset;
        acc += std::polar(1.0, omega * p);
    }
    return acc;
}

FourVector grid_offset(const TransferProblem& problem, const InfoConstants& k) {
    if (problem.kind != TransferKind::INTERACTING || !problem.position_dependent) {
        return FourVector{};
    }
    // Experimental branch: center the grid on the classical effective
    // momentum at the chord midpoint, in natural momentum units.
    const FourVector mid = (problem.x_a + problem.x_b) * 0.5;
    const FourVector p_eff =
        dynamics::effective_momentum(problem.params, problem.potential, mid, k);
    return p_eff / (k.q_c * k.nu_c);
}

void check_phase_sampling(const FourVector& dx, const MomentumGrid& grid,
                          const InfoConstants& k, const char* op) {
    const auto w = phase_omegas(dx, k);
    for (int a = 0; a < 4; ++a) {
        const double dp = 2.0 * grid.cutoff[a] / grid.points[a];
        if (std::abs(w[a]) * dp > kPi) {
            fail(ErrorCode::undersampled_phase, kModule, op,
                 "momentum grid undersamples the phase along axis " + std::to_string(a));
        }
    }
}

}  // namespace

void MomentumGrid::validate() const {
    for (int a = 0; a < 4; ++a) {
        if (points[a] < 2) {
            fail(ErrorCode::invalid_input, kModule, "MomentumGrid",
                 "grid needs >= 2 points per axis");
        }
        if (!(cutoff[a] > 0.0) || !std::isfinite(cutoff[a])) {
            fail(ErrorCode::invalid_input, kModule, "MomentumGrid",
                 "cutoffs must be positive and finite");
        }
    }
}

Complex amplitude_unnormalized(const FourVector& dx, const MomentumGrid& grid,
                               const InfoConstants& k) {
    grid.validate();
    return amplitude_unnormalized_offset(dx, grid, k, FourVector{});
}

Complex amplitude_unnormalized_offset(const FourVector& dx, const MomentumGrid& grid,
                                      const InfoConstants& k, const FourVector& offset) {
    const auto w = phase_omegas(dx, k);
    Complex prod{1.0, 0.0};
    for (int a = 0; a < 4; ++a) {
        const double dp = 2.0 * grid.cutoff[a] / grid.points[a];
        prod *= axis_sum(w[a], grid.cutoff[a], grid.points[a], offset[a]) * dp;
    }
    return prod / (8.0 * kPi * kPi * kPi * kPi);
}

Complex amplitude_free(const TransferProblem& problem, const InfoConstants& k, double n_norm) {
    if (problem.kind != TransferKind::FREE) {
        fail(ErrorCode::invalid_input, kModule, "amplitude_free", "problem kind must be FREE");
    }
    problem.grid.validate();
    const FourVector dx = problem.x_b - problem.x_a;
    check_phase_sampling(dx, problem.grid, k, "amplitude_free");
    return amplitude_unnormalized(dx, problem.grid, k) / n_norm;
}

Complex amplitude_interacting(const TransferProblem& problem, const InfoConstants& k,
                              double n_norm) {
    if (problem.kind != TransferKind::INTERACTING) {
        fail(ErrorCode::invalid_input, kModule, "amplitude_interacting",
             "problem kind must be INTERACTING");
    }
    problem.grid.validate();
    const FourVector dx = problem.x_b - problem.x_a;
    check_phase_sampling(dx, problem.grid, k, "amplitude_interacting");
    const FourVector offset = grid_offset(problem, k);
    return amplitude_unnormalized_offset(dx, problem.grid, k, offset) / n_norm;
}

double normalize(const TransferProblem& problem, const Lattice4& domain, const InfoConstants& k) {
    problem.grid.validate();
    const FourVector offset = grid_offset(problem, k);
    const std::size_t n = domain.site_count();
    std::vector<double> mass(n);
    for (std::size_t s = 0; s < n; ++s) {
        const FourVector dx = domain.coordinate(domain.unflat(s)) - problem.x_a;
        check_phase_sampling(dx, problem.grid, k, "normalize");
        const Complex amp = amplitude_unnormalized_offset(dx, problem.grid, k, offset);
        mass[s] = std::norm(amp);
    }
    const double total = pairwise_sum(std::span<const double>(mass)) * domain.cell_volume();
    // Degeneracy floor relative to an all-constructive-phase amplitude.
    double k_bound = 1.0 / (8.0 * kPi * kPi * kPi * kPi);
    for (int a = 0; a < 4; ++a) k_bound *= 2.0 * problem.grid.cutoff[a];
    const double n_floor =
        1e-14 * k_bound * std::sqrt(static_cast<double>(n) * domain.cell_volume());
    if (!std::isfinite(total) || !(std::sqrt(total) > n_floor)) {
        fail(ErrorCode::degenerate_normalization, kModule, "normalize",
             "amplitude vanishes over the whole end-point domain");
    }
    return std::sqrt(total);
}

double probability(Complex k_amplitude) { return std::norm(k_amplitude); }

TensorField probability_density(const TransferProblem& problem, const Lattice4& end_lattice,
                                const InfoConstants& k, bool derivative_form) {
    const double n_norm = normalize(problem, end_lattice, k);
    const FourVector offset = grid_offset(problem, k);
    TensorField rho = TensorField::scalar(end_lattice);
    for (std::size_t s = 0; s < end_lattice.site_count(); ++s) {
        const FourVector dx = end_lattice.coordinate(end_lattice.unflat(s)) - problem.x_a;
        const Complex amp = amplitude_unnormalized_offset(dx, problem.grid, k, offset) / n_norm;
        rho.value(s) = std::norm(amp);
    }
    if (!derivative_form) return rho;

    // Literal reading: d Omega / d^4x along the cell diagonal. Kept for
    // fidelity studies; it does not integrate to one.
    const double cell = end_lattice.cell_volume();
    TensorField out = TensorField::scalar(end_lattice);
    const auto shift = [&](Index4 idx, int dir) {
        for (int a = 0; a < 4; ++a) idx[a] += dir;
        return idx;
    };
    const auto in_range = [&](const Index4& idx) {
        for (int a = 0; a < 4; ++a)
            if (idx[a] < 0 || idx[a] >= end_lattice.extents[a]) return false;
        return true;
    };
    for (std::size_t s = 0; s < end_lattice.site_count(); ++s) {
        const Index4 idx = end_lattice.unflat(s);
        const Index4 up = shift(idx, +1);
        const Index4 dn = shift(idx, -1);
        const auto omega_at = [&](const Index4& i) { return rho.value(end_lattice.flat(i)) * cell; };
        double d;
        if (in_range(up) && in_range(dn)) {
            d = (omega_at(up) - omega_at(dn)) / 2.0;
        } else if (in_range(up)) {
            d = omega_at(up) - omega_at(idx);
        } else if (in_range(dn)) {
            d = omega_at(idx) - omega_at(dn);
        } else {
            d = 0.0;
        }
        out.value(s) = d / cell;
    }
    return out;
}

std::pair<FourVector, QuantizedDisplacement> mean_displacement_from_density(
    const TensorField& rho, const FourVector& x_a, double mean_speed_sq, const InfoConstants& k) {
    if (rho.rank() != 0) {
        fail(ErrorCode::rank_error, kModule, "mean_displacement", "density must be rank 0");
    }
    const Lattice4& lat = rho.lattice();
    const double cell = lat.cell_volume();
    const std::size_t n = lat.site_count();
    FourVector mean;
    std::vector<double> buf(n);
    for (int a = 0; a < 4; ++a) {
        for (std::size_t s = 0; s < n; ++s) {
            const FourVector x = lat.coordinate(lat.unflat(s));
            buf[s] = (x[a] - x_a[a]) * rho.value(s) * cell;
        }
        mean[a] = pairwise_sum(std::span<const double>(buf));
    }
    mean.unit = Unit::position;
    return {mean, quantize_displacement(mean, mean_speed_sq, k)};
}

std::pair<FourVector, QuantizedDisplacement> mean_displacement(const TransferProblem& problem,
                                                               const Lattice4& end_lattice,
                                                               const InfoConstants& k) {
    const TensorField rho = probability_density(problem, end_lattice, k, false);
    return mean_displacement_from_density(rho, problem.x_a, problem.mean_speed_sq, k);
}

double phase_sampling_ratio(const TransferProblem& problem, const InfoConstants& k) {
    double worst = 0.0;
    const auto check = [&](const FourVector& dx) {
        const auto w = phase_omegas(dx, k);
        for (int a = 0; a < 4; ++a) {
            const double dp = 2.0 * problem.grid.cutoff[a] / problem.grid.points[a];
            worst = std::max(worst, std::abs(w[a]) * dp / kPi);
        }
    };
    if (problem.end_lattice) {
        const Lattice4& lat = *problem.end_lattice;
        for (std::size_t s = 0; s < lat.site_count(); ++s) {
            check(lat.coordinate(lat.unflat(s)) - problem.x_a);
        }
    } else {
        check(problem.x_b - problem.x_a);
    }
    return worst;
}

TransferResult compute_transfer(const TransferProblem& problem, const InfoConstants& k) {
    TransferResult res;
    const bool interacting = problem.kind == TransferKind::INTERACTING;
    if (problem.end_lattice) {
        res.n_norm = normalize(problem, *problem.end_lattice, k);
    }
    res.amplitude = interacting ? amplitude_interacting(problem, k, res.n_norm)
                                : amplitude_free(problem, k, res.n_norm);
    res.omega = probability(res.amplitude);
    if (problem.end_lattice) {
        res.rho = probability_density(problem, *problem.end_lattice, k, false);
        if (problem.mean_speed_sq > 0.0) {
            auto [mean, quant] =
                mean_displacement_from_density(res.rho, problem.x_a, problem.mean_speed_sq, k);
            res.mean_displacement = mean;
            res.quantized = quant;
        } else {
            // Mean displacement without quantization.
            TransferProblem p = problem;
            const Lattice4& lat = *problem.end_lattice;
            const double cell = lat.cell_volume();
            std::vector<double> buf(lat.site_count());
            for (int a = 0; a < 4; ++a) {
                for (std::size_t s = 0; s < lat.site_count(); ++s) {
                    const FourVector x = lat.coordinate(lat.unflat(s));
                    buf[s] = (x[a] - p.x_a[a]) * res.rho.value(s) * cell;
                }
                res.mean_displacement[a] = pairwise_sum(std::span<const double>(buf));
            }
        }
    }
    return res;
}

}  // namespace infospace::pathint
