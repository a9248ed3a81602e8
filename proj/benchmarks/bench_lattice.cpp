#include <benchmark/benchmark.h>

#include "infospace/generators.hpp"
#include "infospace/lattice_ops.hpp"

using namespace infospace;

namespace {

Lattice4 cube(int n) {
    const double h = 1.0 / n;
    return Lattice4({n, n, n, n}, {h, h, h, h}, FourVector{0, 0, 0, 0});
}

TensorField smooth_potential(const Lattice4& lat) {
    FieldGenerator g;
    g.rank = 1;
    g.terms.resize(4);
    g.terms[0] = {{0.7, {0, 3, 0, 0}}, {0.2, {0, 0, 2, 0}}};
    g.terms[1] = {{-0.4, {3, 0, 0, 0}}};
    g.terms[2] = {{0.5, {1, 1, 1, 0}}};
    g.terms[3] = {{0.3, {0, 1, 2, 0}}};
    return g.realize(lat);
}

void BM_field_tensor(benchmark::State& state) {
    const Lattice4 lat = cube(static_cast<int>(state.range(0)));
    const TensorField a = smooth_potential(lat);
    for (auto _ : state) {
        benchmark::DoNotOptimize(field_tensor(a));
    }
    state.SetItemsProcessed(state.iterations() * lat.site_count());
}
BENCHMARK(BM_field_tensor)->Arg(8)->Arg(16);

void BM_dual_tensor(benchmark::State& state) {
    const Lattice4 lat = cube(static_cast<int>(state.range(0)));
    const TensorField g = field_tensor(smooth_potential(lat));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dual_tensor(g));
    }
    state.SetItemsProcessed(state.iterations() * lat.site_count());
}
BENCHMARK(BM_dual_tensor)->Arg(8)->Arg(16);

void BM_dalembertian(benchmark::State& state) {
    const Lattice4 lat = cube(static_cast<int>(state.range(0)));
    const TensorField a = smooth_potential(lat);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dalembertian(a));
    }
    state.SetItemsProcessed(state.iterations() * lat.site_count());
}
BENCHMARK(BM_dalembertian)->Arg(8)->Arg(16);

void BM_contract_rank2(benchmark::State& state) {
    const Lattice4 lat = cube(static_cast<int>(state.range(0)));
    const TensorField g = field_tensor(smooth_potential(lat));
    const TensorField lowered = lower_all(g);
    const std::pair<int, int> pairing[] = {{0, 0}, {1, 1}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(contract(g, lowered, pairing));
    }
    state.SetItemsProcessed(state.iterations() * lat.site_count());
}
BENCHMARK(BM_contract_rank2)->Arg(8)->Arg(16);

}  // namespace
