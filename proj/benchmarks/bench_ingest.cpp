#include <benchmark/benchmark.h>

#include "collabpred/csv.hpp"
#include "collabpred/simulate.hpp"
#include "collabpred/xes.hpp"

using namespace collabpred;

namespace {

EventLog sample_log(std::int64_t cases) {
    SimConfig cfg;
    cfg.n_cases = cases;
    cfg.seed = 1;
    return simulate(builtin_model("healthcare"), cfg);
}

void BM_WriteCsv(benchmark::State& state) {
    const EventLog log = sample_log(state.range(0));
    for (auto _ : state) {
        std::string out = write_csv(log, ColumnMapping{});
        benchmark::DoNotOptimize(out);
    }
    state.SetItemsProcessed(state.iterations() * event_count(log));
}
BENCHMARK(BM_WriteCsv)->Arg(100)->Arg(1000);

void BM_ParseCsv(benchmark::State& state) {
    const std::string doc = write_csv(sample_log(state.range(0)), ColumnMapping{});
    for (auto _ : state) {
        EventLog log = parse_csv(doc, ColumnMapping{});
        benchmark::DoNotOptimize(log);
    }
    state.SetBytesProcessed(state.iterations() * doc.size());
}
BENCHMARK(BM_ParseCsv)->Arg(100)->Arg(1000);

void BM_WriteXes(benchmark::State& state) {
    const EventLog log = sample_log(state.range(0));
    for (auto _ : state) {
        std::string out = write_xes(log);
        benchmark::DoNotOptimize(out);
    }
    state.SetItemsProcessed(state.iterations() * event_count(log));
}
BENCHMARK(BM_WriteXes)->Arg(100)->Arg(1000);

void BM_ParseXes(benchmark::State& state) {
    const std::string doc = write_xes(sample_log(state.range(0)));
    for (auto _ : state) {
        EventLog log = parse_xes(doc);
        benchmark::DoNotOptimize(log);
    }
    state.SetBytesProcessed(state.iterations() * doc.size());
}
BENCHMARK(BM_ParseXes)->Arg(100)->Arg(1000);

} // namespace
