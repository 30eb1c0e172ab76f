#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "collabpred/dataset.hpp"

namespace collabpred {

struct CategoricalCell {
    std::map<std::string, std::int64_t> counts;
    std::int64_t total = 0;
};

struct NumericCell {
    std::int64_t count = 0;
    std::int64_t sum = 0;          // ms or message count; exact integer arithmetic
    unsigned __int128 sumsq = 0;
};

/// Conditional-frequency predictor with a backoff chain of context orders
/// 0..order; order 0 is the global distribution. Deterministic in training
/// data, independent of row order.
struct FrequencyModel {
    PredictionTask task;
    EncoderConfig encoder;
    int order = 3;
    std::int64_t min_count = 1;
    bool numeric = false;
    std::string training_log_hash;
    std::vector<std::map<StateKey, CategoricalCell>> cat_tables;
    std::vector<std::map<StateKey, NumericCell>> num_tables;
};

/// Trains on a dataset; order defaults to the dataset's encoder order and
/// may not exceed it. Throws Error: EmptyDataset, InvalidOrder.
FrequencyModel train(const Dataset& ds, std::optional<int> order = std::nullopt,
                     std::int64_t min_count = 1);

struct PredictionResult {
    // Categorical: label + argmax probability + normalized distribution.
    std::optional<std::string> label;
    double confidence = 0.0;
    std::map<std::string, double> distribution;
    // Numeric: backoff mean.
    double estimate = 0.0;
    int backoff_order = 0;
};

/// Backs off to the longest context with at least min_count observations
/// (order 0 always answers). Ties broken lexicographically on label.
PredictionResult predict_state(const FrequencyModel& model, const StateKey& state);

/// Applies the model's view to the prefix events, encodes, predicts.
/// Throws Error("PrefixEmptyInView") when nothing of the prefix is visible
/// in the model's view.
PredictionResult predict(const FrequencyModel& model, std::span<const Event> prefix);
PredictionResult predict(const FrequencyModel& model, const Prefix& prefix);
PredictionResult predict(const FrequencyModel& model, const Trace& running_trace);

/// Versioned, human-readable model file; byte-deterministic.
std::string write_model(const FrequencyModel& model);

/// Throws Error: MalformedFile, ModelVersionMismatch.
FrequencyModel parse_model(std::string_view text);

} // namespace collabpred
