#include <benchmark/benchmark.h>

#include "amoebot/counter.hpp"
#include "amoebot/hull_oracle.hpp"
#include "amoebot/runner.hpp"
#include "amoebot/shapes.hpp"
#include "amoebot/solo.hpp"

using namespace amoebot;

namespace {

void BM_CounterRun(benchmark::State& state) {
    const auto ops = random_operations(static_cast<std::size_t>(state.range(0)), 1 << 12, 3);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        const CounterRunResult r = run_counter(ops, 14, seed++);
        benchmark::DoNotOptimize(r.rounds);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CounterRun)->Arg(1000)->Arg(10000);

void BM_Hulls(benchmark::State& state) {
    const ObjectShape O = family_member("blob", static_cast<int>(state.range(0)), 5);
    for (auto _ : state) benchmark::DoNotOptimize(hulls(O).strong_cycle.size());
}
BENCHMARK(BM_Hulls)->Arg(100)->Arg(400);

void BM_Solo(benchmark::State& state) {
    const ObjectShape O = family_member("blob", static_cast<int>(state.range(0)), 5);
    const Node s = default_start(O);
    for (auto _ : state) benchmark::DoNotOptimize(run_solo(O, s).steps);
}
BENCHMARK(BM_Solo)->Arg(100)->Arg(400);

void BM_StrongRun(benchmark::State& state) {
    const auto O = std::make_shared<const ObjectShape>(family_member("hexagon", static_cast<int>(state.range(0)), 1));
    RunSpec spec;
    spec.object = O;
    spec.particles = static_cast<int>(hulls(*O).strong_cycle.size());
    for (auto _ : state) {
        const RunOutcome r = execute(spec);
        state.counters["rounds"] = static_cast<double>(r.rounds);
        ++spec.seed;
    }
}
BENCHMARK(BM_StrongRun)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

void BM_WeakRun(benchmark::State& state) {
    const auto O = std::make_shared<const ObjectShape>(family_member("blob", static_cast<int>(state.range(0)), 2));
    RunSpec spec;
    spec.object = O;
    spec.mode = Mode::Weak;
    spec.particles = static_cast<int>(hulls(*O).strong_cycle.size());
    for (auto _ : state) {
        const RunOutcome r = execute(spec);
        state.counters["rounds"] = static_cast<double>(r.rounds);
        ++spec.seed;
    }
}
BENCHMARK(BM_WeakRun)->Arg(48)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
