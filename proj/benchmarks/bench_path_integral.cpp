#include <benchmark/benchmark.h>

#include "infospace/path_integral.hpp"

using namespace infospace;
using namespace infospace::pathint;

namespace {

void BM_amplitude(benchmark::State& state) {
    const auto k = derive_constants(codata2002(), UnitMode::NATURAL);
    MomentumGrid grid;
    grid.cutoff = {1, 1, 1, 1};
    const int n = static_cast<int>(state.range(0));
    grid.points = {n, n, n, n};
    const FourVector dx{0.8, 0.3, -0.1, 0.2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(amplitude_unnormalized(dx, grid, k));
    }
}
BENCHMARK(BM_amplitude)->Arg(16)->Arg(64)->Arg(256);

void BM_probability_density(benchmark::State& state) {
    const auto k = derive_constants(codata2002(), UnitMode::NATURAL);
    TransferProblem problem;
    problem.kind = TransferKind::FREE;
    problem.x_a = {0, 0, 0, 0};
    problem.x_b = {0.4, 0.2, 0, 0};
    problem.grid.cutoff = {1, 1, 1, 1};
    problem.grid.points = {16, 16, 16, 16};
    const Lattice4 domain({7, 5, 5, 5}, {0.2, 0.2, 0.2, 0.2},
                          FourVector{-0.6, -0.4, -0.4, -0.4});
    for (auto _ : state) {
        benchmark::DoNotOptimize(probability_density(problem, domain, k, false));
    }
    state.SetItemsProcessed(state.iterations() * domain.site_count());
}
BENCHMARK(BM_probability_density);

void BM_minimize_free_action(benchmark::State& state) {
    const auto k = derive_constants(codata2002(), UnitMode::NATURAL);
    const dynamics::FreeLagrangian lag(1.0, k);
    dynamics::OptimizerOptions opts;
    opts.tol = 1e-6;
    opts.max_iters = 100000;
    dynamics::Path4 init = dynamics::straight_path({0, 0, 0, 0}, {10, 3, 0, 0}, 8);
    for (std::size_t i = 1; i + 1 < init.nodes.size(); ++i) init.nodes[i][1] += 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            dynamics::minimize_action({0, 0, 0, 0}, {10, 3, 0, 0}, lag, 8, opts, k, init));
    }
}
BENCHMARK(BM_minimize_free_action);

}  // namespace
