#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "collabpred/model.hpp"

namespace collabpred {

struct LabelMetrics {
    std::string label;
    std::int64_t support = 0; // true occurrences in the test rows
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct Metrics {
    bool numeric = false;
    std::int64_t rows = 0;
    // Categorical.
    double accuracy = 0.0;
    double macro_f1 = 0.0;
    std::vector<LabelMetrics> per_label; // sorted by label; union of true and
                                         // predicted labels
    // Numeric.
    double mae = 0.0;
    double rmse = 0.0;
    // Exclusions mirrored from dataset generation on the test log.
    std::int64_t excluded_undefined = 0;
    std::int64_t excluded_witnessed = 0;
    std::int64_t excluded_empty_view = 0;
};

/// Regenerates (prefix, target) pairs on the test log with the model's task
/// and encoder, then scores the model's predictions. Deterministic.
/// Throws Error("EmptyAfterView") when the view removes every test trace.
Metrics evaluate(const FrequencyModel& model, const EventLog& test_log);

std::string metrics_to_csv(const Metrics& m);
std::string metrics_to_text(const Metrics& m);

} // namespace collabpred
