// Serial reference vs OpenMP path for the three parallel kernels.
#include "uniprior/code.hpp"
#include "uniprior/multi_sender.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace uniprior;

namespace {

// Disjoint 2-cycles chained by one-way arcs, with overlapping pair senders.
Instance ring_instance(int n) {
    Instance inst;
    inst.n = n;
    inst.q.assign(n, 1);
    for (int v = 1; v + 1 <= n; v += 2) {
        inst.arcs.push_back({v, v + 1});
        inst.arcs.push_back({v + 1, v});
        if (v + 2 <= n)
            inst.arcs.push_back({v + 2, v});
    }
    for (int v = 1; v <= n; ++v)
        inst.senders.push_back({v, v % n + 1});
    return inst;
}

Instance random_instance(int n, unsigned seed) {
    std::mt19937 rng(seed);
    Instance inst;
    inst.n = n;
    inst.q.assign(n, 1);
    std::bernoulli_distribution arc(0.3);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j && arc(rng))
                inst.arcs.push_back({i, j});
    for (int v = 1; v <= n; v += 3) {
        std::vector<int> s;
        for (int k = v; k < v + 4 && k <= n; ++k)
            s.push_back(k);
        inst.senders.push_back(s);
    }
    return inst;
}

Execution exec_of(const benchmark::State& state) {
    return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_VerifyExhaustive(benchmark::State& state) {
    const Instance inst = ring_instance(18);
    const LinearIndexCode code = bound_multi(inst).code;
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_exhaustive(inst, code, 20, exec_of(state)));
}

void BM_Oracle(benchmark::State& state) {
    const Instance inst = random_instance(9, 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle_min_linear(inst, {}, exec_of(state)));
}

void BM_ClosedSets(benchmark::State& state) {
    const Instance inst = random_instance(18, 11);
    const WorkGraph g = WorkGraph::from_instance(inst);
    const MessageGraph u = derive_message_graph(inst);
    for (auto _ : state)
        benchmark::DoNotOptimize(closed_connected_sets(g, u, {}, exec_of(state)));
}

} // namespace

BENCHMARK(BM_VerifyExhaustive)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Oracle)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosedSets)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
