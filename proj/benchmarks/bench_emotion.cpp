#include <benchmark/benchmark.h>

#include "infospace/emotion.hpp"
#include "infospace/generators.hpp"

using namespace infospace;

namespace {

emotion::TextPair make_pair(int n, int m) {
    const double h = 0.5;
    const Lattice4 lat({n, n, n, n}, {h, h, h, h}, FourVector{0.05, -0.1, 0.2, 0.0});
    FieldGenerator g;
    g.rank = m;
    g.terms.resize(std::size_t{1} << (2 * m));
    int phase = 0;
    for (auto& comp : g.terms) {
        comp.push_back({0.1 + 0.01 * phase, {0, 0, 0, 0}});
        MonomialTerm lin{0.05, {0, 0, 0, 0}};
        lin.powers[phase % 4] = 1;
        comp.push_back(lin);
        ++phase;
    }
    emotion::TextPair pair;
    pair.m = m;
    pair.text = g.realize(lat);
    pair.perception = g.realize(lat);
    pair.n_field = constant_scalar(lat, 1.0);
    return pair;
}

void BM_assemble_gie(benchmark::State& state) {
    const auto k = derive_constants(codata2002(), UnitMode::NATURAL);
    const emotion::TextPair pair =
        make_pair(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(emotion::assemble_gie(pair, k));
    }
    state.SetItemsProcessed(state.iterations() * pair.text.lattice().site_count());
}
BENCHMARK(BM_assemble_gie)->Args({6, 1})->Args({8, 1})->Args({6, 2});

void BM_build_streamset(benchmark::State& state) {
    const auto k = derive_constants(codata2002(), UnitMode::NATURAL);
    const emotion::TextPair pair = make_pair(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(emotion::build_streamset(pair, k));
    }
}
BENCHMARK(BM_build_streamset)->Arg(8);

}  // namespace
