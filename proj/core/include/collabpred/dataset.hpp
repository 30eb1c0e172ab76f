#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "collabpred/tasks.hpp"

namespace collabpred {

/// Prefix encoding: the last `order` activity labels of the prefix in the
/// task view, left-padded with a reserved start token, optionally followed by
/// the last event's participant and direction. Tokens are escaped so the
/// reserved start and separator bytes never collide with real labels.
/// skip_witnessed drops outcome rows whose prefix already contains the
/// outcome (trivially-true training rows are kept by default).
struct EncoderConfig {
    int order = 3;
    bool with_participant = false;
    bool with_direction = false;
    bool skip_witnessed = false;

    bool operator==(const EncoderConfig&) const = default;
};

/// Escaped tokens joined with 0x1f; the start token is 0x02.
using StateKey = std::string;

StateKey encode_prefix(const Trace& viewed, std::size_t k, const EncoderConfig& enc);

/// Backoff context of a full-order key: last `keep` activity tokens plus the
/// attribute tokens (keep >= 1); keep == 0 is the empty global context.
StateKey backoff_key(const StateKey& full, int keep, const EncoderConfig& enc);

std::vector<std::string> state_tokens(const StateKey& key);

struct DatasetRow {
    StateKey state;
    Target target;

    bool operator==(const DatasetRow&) const = default;
};

/// Training rows plus the provenance that regenerates them. The recorded
/// task view is canonical: a process scope whose view-applied log contains a
/// single participant is recorded as that participant's scope, which makes
/// the orchestration reduction literal (same data, same provenance).
struct Dataset {
    std::vector<DatasetRow> rows;
    PredictionTask task;
    EncoderConfig encoder;
    std::string source_log_hash; // fnv1a64 of the view-applied log, canonical CSV
    std::int64_t skipped_undefined = 0;
    std::int64_t skipped_witnessed = 0;
    std::int64_t dropped_traces = 0;

    bool operator==(const Dataset&) const = default;
};

/// Emits one row per (trace, k) of the view-applied log, k = 1..|trace|,
/// skipping Undefined targets; row order is trace order then k.
/// Throws Error("EmptyAfterView") when the view removes every trace.
Dataset generate_dataset(const EventLog& log, const PredictionTask& task,
                         const EncoderConfig& enc);

std::string write_dataset(const Dataset& ds);
Dataset parse_dataset(std::string_view text);

/// fnv1a64 hex digest of the log's canonical CSV serialization.
std::string log_hash(const EventLog& log);

} // namespace collabpred
