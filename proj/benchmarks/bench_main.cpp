#include <benchmark/benchmark.h>

#include "bpvd/forbidden.hpp"
#include "bpvd/generator.hpp"
#include "bpvd/oracle.hpp"
#include "bpvd/ordering.hpp"
#include "bpvd/reduction.hpp"

using namespace bpvd;

namespace {

Graph bp_graph(int side, double density) {
    GenParams p;
    p.seed = 1234;
    p.n_u = side;
    p.n_w = side;
    p.density = density;
    return gen_bp(p);
}

Instance fuzz_instance(std::uint64_t seed) {
    return corpus_instance(42, seed, CorpusParams{6, 3, 4});
}

void BM_Recognition(benchmark::State& state) {
    Graph g = bp_graph((int)state.range(0), 0.3);
    for (auto _ : state) {
        auto r = compute_strong_ordering(g);
        benchmark::DoNotOptimize(r);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Recognition)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_FindSmallForbidden(benchmark::State& state) {
    Instance inst = fuzz_instance((std::uint64_t)state.range(0));
    for (auto _ : state) {
        auto r = find_small_forbidden(inst.graph);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_FindSmallForbidden)->Arg(3)->Arg(11)->Arg(29);

void BM_MinVertexCut(benchmark::State& state) {
    Graph g = bp_graph((int)state.range(0), 0.4);
    auto vs = g.vertices();
    VertexId x = *vs.begin(), y = *vs.rbegin();
    if (g.has_edge(x, y)) return;
    for (auto _ : state) {
        auto cut = min_vertex_cut(g, x, y);
        benchmark::DoNotOptimize(cut);
    }
}
BENCHMARK(BM_MinVertexCut)->Arg(16)->Arg(48);

void BM_ExactSolve(benchmark::State& state) {
    Instance inst = fuzz_instance((std::uint64_t)state.range(0));
    SolveLimit lim{3, 500'000'000};
    for (auto _ : state) {
        auto x = exact_min_deletion(inst.graph, lim);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_ExactSolve)->Arg(5)->Arg(13);

void BM_KernelizeStrict(benchmark::State& state) {
    Instance inst = fuzz_instance((std::uint64_t)state.range(0));
    for (auto _ : state) {
        KernelResult r = kernelize(inst, Bounds::strict());
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_KernelizeStrict)->Arg(5)->Arg(13)->Arg(29);

} // namespace

BENCHMARK_MAIN();
