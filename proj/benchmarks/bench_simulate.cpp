#include <benchmark/benchmark.h>

#include "collabpred/simulate.hpp"

using namespace collabpred;

namespace {

void BM_SimulateHealthcare(benchmark::State& state) {
    const CollabModel model = builtin_model("healthcare");
    SimConfig cfg;
    cfg.n_cases = state.range(0);
    cfg.seed = 42;
    for (auto _ : state) {
        EventLog log = simulate(model, cfg);
        benchmark::DoNotOptimize(log);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateHealthcare)->Arg(10)->Arg(100)->Arg(1000);

void BM_SimulateBuyerReseller(benchmark::State& state) {
    const CollabModel model = builtin_model("buyer_reseller");
    SimConfig cfg;
    cfg.n_cases = state.range(0);
    cfg.seed = 42;
    for (auto _ : state) {
        EventLog log = simulate(model, cfg);
        benchmark::DoNotOptimize(log);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateBuyerReseller)->Arg(100)->Arg(1000);

void BM_ModelCheck(benchmark::State& state) {
    const std::string& text = builtin_model_text("healthcare");
    for (auto _ : state) {
        CollabModel model = parse_collab_model(text);
        benchmark::DoNotOptimize(model);
    }
}
BENCHMARK(BM_ModelCheck);

} // namespace

BENCHMARK_MAIN();
