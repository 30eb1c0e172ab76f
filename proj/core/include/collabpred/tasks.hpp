#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "collabpred/event.hpp"
#include "collabpred/view.hpp"

namespace collabpred {

enum class TaskFamily { Outcome, Numeric, NextEvent };

enum class TaskKind {
    ParticipantWillAppear,
    MessageWillOccur,
    RemainingMessages,
    TotalMessages,
    RemainingTime,
    TotalDuration,
    TimeToNextMessage,
    NextActivity,
    NextParticipant,
    NextMessageLabel,
    NextMessageCounterpart,
};

struct Undefined {
    bool operator==(const Undefined&) const = default;
};

/// Ground-truth value for one (trace, prefix) pair: boolean outcome, count,
/// duration, label, or Undefined when no target exists (e.g. no next event).
using Target = std::variant<Undefined, bool, std::int64_t, Duration, std::string>;

bool is_undefined(const Target& t);
std::string target_to_string(const Target& t);

/// Numeric view of a Count or Duration target.
double target_value(const Target& t);

/// One prediction problem: what to predict and through which view the log is
/// read. The view's scope and content shape the prefix trace; its direction
/// qualifies which message events count as targets (an intervening message of
/// the other direction is skipped, not hidden from the prefix).
struct PredictionTask {
    TaskKind kind = TaskKind::NextActivity;
    ViewSpec view;
    std::string target_participant; // ParticipantWillAppear
    std::string target_message;     // MessageWillOccur

    bool operator==(const PredictionTask&) const = default;
};

TaskFamily family_of(TaskKind kind);
const char* to_string(TaskKind kind);
std::optional<TaskKind> task_kind_from_string(std::string_view s);

std::optional<Error> validate_task(const PredictionTask& task);

/// The view to apply to traces before prefixing/encoding: scope and content
/// of task.view with the direction filter stripped.
ViewSpec trace_view(const PredictionTask& task);

/// Dispatching labeler; pre: 1 <= k <= |trace|, trace already in trace_view.
Target label(const PredictionTask& task, const Trace& viewed, std::size_t k);

// Individual labelers, one per prediction-target semantics; the direction
// is the task view's direction filter.
bool label_outcome_participant(const std::string& p, const Trace& t, std::size_t k);
bool label_outcome_message(const std::string& m, DirectionFilter d, const Trace& t,
                           std::size_t k);
std::int64_t label_remaining_messages(DirectionFilter d, const Trace& t, std::size_t k);
std::int64_t label_total_messages(DirectionFilter d, const Trace& t);
Duration label_remaining_time(const Trace& t, std::size_t k);
Duration label_total_duration(const Trace& t);
Target label_time_to_next_message(DirectionFilter d, const Trace& t, std::size_t k);
Target label_next_activity(const Trace& t, std::size_t k);
Target label_next_participant(const Trace& t, std::size_t k);
Target label_next_message(DirectionFilter d, const Trace& t, std::size_t k);
Target label_next_message_counterpart(DirectionFilter d, const Trace& t, std::size_t k);

/// One entry per CLI task identifier (documented in the README; some targets
/// split into remaining/total or send/receive variants).
struct TaskTemplate {
    std::string id;
    TaskKind kind;
    DirectionFilter direction; // baked into -send/-receive identifiers
    bool participant_scoped;   // id fixes participant scope (--participant = view)
    bool scope_flexible;       // --participant switches process -> participant scope
    bool needs_target_participant;
    bool needs_target_message;
};

const std::vector<TaskTemplate>& task_registry();

struct TaskOptions {
    std::string participant;  // view participant, or target for outcome-participant
    std::string message;      // target message label
    bool messages_only = false;
};

/// Builds a task from a registry id plus CLI-style options.
/// Throws Error: UnknownTask, MissingTaskOption.
PredictionTask make_task(const std::string& id, const TaskOptions& opts);

} // namespace collabpred
