#include <benchmark/benchmark.h>

#include "collabpred/metrics.hpp"
#include "collabpred/model.hpp"
#include "collabpred/simulate.hpp"

using namespace collabpred;

namespace {

EventLog sample_log(std::int64_t cases, std::uint64_t seed) {
    SimConfig cfg;
    cfg.n_cases = cases;
    cfg.seed = seed;
    return simulate(builtin_model("healthcare"), cfg);
}

void BM_GenerateDataset(benchmark::State& state) {
    const EventLog log = sample_log(state.range(0), 1);
    const PredictionTask task = make_task("next-activity-process", {});
    for (auto _ : state) {
        Dataset ds = generate_dataset(log, task, {3, false, false});
        benchmark::DoNotOptimize(ds);
    }
    state.SetItemsProcessed(state.iterations() * event_count(log));
}
BENCHMARK(BM_GenerateDataset)->Arg(100)->Arg(1000);

void BM_Train(benchmark::State& state) {
    const Dataset ds = generate_dataset(sample_log(state.range(0), 1),
                                        make_task("next-activity-process", {}),
                                        {3, false, false});
    for (auto _ : state) {
        FrequencyModel model = train(ds);
        benchmark::DoNotOptimize(model);
    }
    state.SetItemsProcessed(state.iterations() * ds.rows.size());
}
BENCHMARK(BM_Train)->Arg(100)->Arg(1000);

void BM_PredictState(benchmark::State& state) {
    const Dataset ds = generate_dataset(sample_log(200, 1),
                                        make_task("next-activity-process", {}),
                                        {3, false, false});
    const FrequencyModel model = train(ds);
    std::size_t i = 0;
    for (auto _ : state) {
        PredictionResult r = predict_state(model, ds.rows[i % ds.rows.size()].state);
        benchmark::DoNotOptimize(r);
        ++i;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PredictState);

void BM_Evaluate(benchmark::State& state) {
    const FrequencyModel model =
        train(generate_dataset(sample_log(200, 1), make_task("next-activity-process", {}),
                               {3, false, false}));
    const EventLog test_log = sample_log(state.range(0), 2);
    for (auto _ : state) {
        Metrics m = evaluate(model, test_log);
        benchmark::DoNotOptimize(m);
    }
    state.SetItemsProcessed(state.iterations() * event_count(test_log));
}
BENCHMARK(BM_Evaluate)->Arg(100);

} // namespace
