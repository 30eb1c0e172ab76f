#pragma once

#include <map>
#include <string>
#include <vector>

#include "collabpred/event.hpp"

namespace collabpred {

/// Builds one collaboration log out of per-participant logs. Cases are
/// correlated by exact case_id equality; events with equal timestamps are
/// ordered send < receive < user, then by participant name, then by stable
/// input order. Two inputs contributing field-identical events for the same
/// case raise ConflictingEvent rather than being deduplicated.
EventLog merge_logs(const std::vector<EventLog>& parts);

/// Inverse direction: one log per participant, events in original relative
/// order; cases a participant never touches are dropped from its log.
std::map<std::string, EventLog> split_log(const EventLog& collab);

/// Tie-policy normalization: traces sorted by case_id, events within a trace
/// stably re-ordered by (timestamp, send<receive<user, participant).
/// merge_logs(split_log(L)) == L exactly when L is normalized.
EventLog normalize_log(const EventLog& log);

/// Merge-order comparator key; exposed for tests.
int direction_rank(const Event& e);

} // namespace collabpred
