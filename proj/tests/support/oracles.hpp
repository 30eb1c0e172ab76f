#pragma once

// Naive reference implementations used to cross-check the labelers and the
// predictor. Everything here scans linearly and stays independent of the
// library code paths it verifies.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "collabpred/dataset.hpp"
#include "collabpred/event.hpp"
#include "collabpred/view.hpp"

namespace collabpred::testing {

inline bool oracle_is_message(const Event& e, DirectionFilter d) {
    if (e.elem_type != ElemType::Message) return false;
    switch (d) {
    case DirectionFilter::SendOnly: return e.direction == Direction::Send;
    case DirectionFilter::ReceiveOnly: return e.direction == Direction::Receive;
    default: return true;
    }
}

inline bool oracle_participant_will_appear(const Trace& t, const std::string& p) {
    for (std::size_t i = 0; i < t.events.size(); ++i)
        if (t.events[i].participant == p) return true;
    return false;
}

inline bool oracle_message_will_occur(const Trace& t, const std::string& m,
                                      DirectionFilter d) {
    for (std::size_t i = 0; i < t.events.size(); ++i)
        if (oracle_is_message(t.events[i], d) && message_label(t.events[i]) == m)
            return true;
    return false;
}

inline std::int64_t oracle_messages_in_range(const Trace& t, std::size_t first,
                                             std::size_t last, DirectionFilter d) {
    std::int64_t n = 0;
    for (std::size_t i = first; i < last; ++i)
        if (oracle_is_message(t.events[i], d)) ++n;
    return n;
}

inline std::int64_t oracle_remaining_messages(const Trace& t, std::size_t k,
                                              DirectionFilter d) {
    return oracle_messages_in_range(t, k, t.events.size(), d);
}

inline std::int64_t oracle_total_messages(const Trace& t, DirectionFilter d) {
    return oracle_messages_in_range(t, 0, t.events.size(), d);
}

inline std::int64_t oracle_remaining_time_ms(const Trace& t, std::size_t k) {
    return ms_since_epoch(t.events[t.events.size() - 1].timestamp) -
           ms_since_epoch(t.events[k - 1].timestamp);
}

inline std::int64_t oracle_total_duration_ms(const Trace& t) {
    return ms_since_epoch(t.events[t.events.size() - 1].timestamp) -
           ms_since_epoch(t.events[0].timestamp);
}

inline std::optional<std::int64_t> oracle_time_to_next_message_ms(const Trace& t,
                                                                  std::size_t k,
                                                                  DirectionFilter d) {
    for (std::size_t i = k; i < t.events.size(); ++i)
        if (oracle_is_message(t.events[i], d))
            return ms_since_epoch(t.events[i].timestamp) -
                   ms_since_epoch(t.events[k - 1].timestamp);
    return std::nullopt;
}

inline std::optional<std::string> oracle_next_activity(const Trace& t, std::size_t k) {
    if (k + 1 > t.events.size()) return std::nullopt;
    return t.events[k].activity;
}

inline std::optional<std::string> oracle_next_participant(const Trace& t,
                                                          std::size_t k) {
    if (k + 1 > t.events.size()) return std::nullopt;
    return t.events[k].participant;
}

inline std::optional<std::string> oracle_next_message(const Trace& t, std::size_t k,
                                                      DirectionFilter d) {
    for (std::size_t i = k; i < t.events.size(); ++i)
        if (oracle_is_message(t.events[i], d)) return message_label(t.events[i]);
    return std::nullopt;
}

inline std::optional<std::string> oracle_next_message_counterpart(const Trace& t,
                                                                  std::size_t k,
                                                                  DirectionFilter d) {
    for (std::size_t i = k; i < t.events.size(); ++i)
        if (oracle_is_message(t.events[i], d)) return *t.events[i].counterpart;
    return std::nullopt;
}

/// Brute-force empirical mode over all rows sharing the state, ties broken
/// by the lexicographically smallest label.
inline std::string oracle_mode(const std::vector<DatasetRow>& rows,
                               const StateKey& state) {
    std::map<std::string, std::int64_t> counts;
    for (const DatasetRow& row : rows)
        if (row.state == state) ++counts[target_to_string(row.target)];
    std::string best;
    std::int64_t best_count = -1;
    for (const auto& [label, count] : counts)
        if (count > best_count) {
            best = label;
            best_count = count;
        }
    return best;
}

/// Brute-force mean of the numeric targets sharing the state.
inline double oracle_mean(const std::vector<DatasetRow>& rows, const StateKey& state) {
    double sum = 0;
    std::int64_t n = 0;
    for (const DatasetRow& row : rows)
        if (row.state == state) {
            sum += target_value(row.target);
            ++n;
        }
    return sum / static_cast<double>(n);
}

} // namespace collabpred::testing
