#include "collabpred/tasks.hpp"

#include <algorithm>

namespace collabpred {

namespace {

bool qualifies_as_message(const Event& e, DirectionFilter d) {
    if (e.elem_type != ElemType::Message) return false;
    if (d == DirectionFilter::SendOnly) return e.direction == Direction::Send;
    if (d == DirectionFilter::ReceiveOnly) return e.direction == Direction::Receive;
    return true;
}

bool has_message_semantics(TaskKind kind) {
    switch (kind) {
    case TaskKind::MessageWillOccur:
    case TaskKind::TimeToNextMessage:
    case TaskKind::NextMessageLabel:
    case TaskKind::NextMessageCounterpart:
        return true;
    default:
        return false;
    }
}

} // namespace

bool is_undefined(const Target& t) {
    return std::holds_alternative<Undefined>(t);
}

std::string target_to_string(const Target& t) {
    struct Visitor {
        std::string operator()(Undefined) const { return "undefined"; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(std::int64_t n) const { return std::to_string(n); }
        std::string operator()(Duration d) const { return std::to_string(d.count()); }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, t);
}

double target_value(const Target& t) {
    if (const auto* n = std::get_if<std::int64_t>(&t)) return static_cast<double>(*n);
    if (const auto* d = std::get_if<Duration>(&t)) return static_cast<double>(d->count());
    return 0.0;
}

TaskFamily family_of(TaskKind kind) {
    switch (kind) {
    case TaskKind::ParticipantWillAppear:
    case TaskKind::MessageWillOccur:
        return TaskFamily::Outcome;
    case TaskKind::RemainingMessages:
    case TaskKind::TotalMessages:
    case TaskKind::RemainingTime:
    case TaskKind::TotalDuration:
    case TaskKind::TimeToNextMessage:
        return TaskFamily::Numeric;
    default:
        return TaskFamily::NextEvent;
    }
}

const char* to_string(TaskKind kind) {
    switch (kind) {
    case TaskKind::ParticipantWillAppear: return "participant-will-appear";
    case TaskKind::MessageWillOccur: return "message-will-occur";
    case TaskKind::RemainingMessages: return "remaining-messages";
    case TaskKind::TotalMessages: return "total-messages";
    case TaskKind::RemainingTime: return "remaining-time";
    case TaskKind::TotalDuration: return "total-duration";
    case TaskKind::TimeToNextMessage: return "time-to-next-message";
    case TaskKind::NextActivity: return "next-activity";
    case TaskKind::NextParticipant: return "next-participant";
    case TaskKind::NextMessageLabel: return "next-message";
    case TaskKind::NextMessageCounterpart: return "next-message-counterpart";
    }
    return "?";
}

std::optional<TaskKind> task_kind_from_string(std::string_view s) {
    static const TaskKind kAll[] = {
        TaskKind::ParticipantWillAppear, TaskKind::MessageWillOccur,
        TaskKind::RemainingMessages,     TaskKind::TotalMessages,
        TaskKind::RemainingTime,         TaskKind::TotalDuration,
        TaskKind::TimeToNextMessage,     TaskKind::NextActivity,
        TaskKind::NextParticipant,       TaskKind::NextMessageLabel,
        TaskKind::NextMessageCounterpart};
    for (TaskKind k : kAll)
        if (s == to_string(k)) return k;
    return std::nullopt;
}

std::optional<Error> validate_task(const PredictionTask& task) {
    if (task.view.scope == ViewScope::Participant && task.view.participant.empty())
        return Error("MissingTaskOption", "participant scope without a participant name");
    if (task.kind == TaskKind::ParticipantWillAppear && task.target_participant.empty())
        return Error("MissingTaskOption", "participant-will-appear needs a target participant");
    if (task.kind == TaskKind::MessageWillOccur && task.target_message.empty())
        return Error("MissingTaskOption", "message-will-occur needs a target message");
    if (has_message_semantics(task.kind) &&
        task.view.direction == DirectionFilter::Any &&
        task.view.content != ViewContent::MessagesOnly)
        return Error("MissingTaskOption",
                     std::string(to_string(task.kind)) +
                         " needs a direction filter or a messages-only view");
    return std::nullopt;
}

ViewSpec trace_view(const PredictionTask& task) {
    ViewSpec v = task.view;
    v.direction = DirectionFilter::Any;
    return v;
}

bool label_outcome_participant(const std::string& p, const Trace& t, std::size_t) {
    return std::any_of(t.events.begin(), t.events.end(),
                       [&](const Event& e) { return e.participant == p; });
}

bool label_outcome_message(const std::string& m, DirectionFilter d, const Trace& t,
                           std::size_t) {
    return std::any_of(t.events.begin(), t.events.end(), [&](const Event& e) {
        return qualifies_as_message(e, d) && message_label(e) == m;
    });
}

std::int64_t label_remaining_messages(DirectionFilter d, const Trace& t, std::size_t k) {
    std::int64_t n = 0;
    for (std::size_t i = k; i < t.events.size(); ++i)
        if (qualifies_as_message(t.events[i], d)) ++n;
    return n;
}

std::int64_t label_total_messages(DirectionFilter d, const Trace& t) {
    return label_remaining_messages(d, t, 0);
}

Duration label_remaining_time(const Trace& t, std::size_t k) {
    return t.events.back().timestamp - t.events[k - 1].timestamp;
}

Duration label_total_duration(const Trace& t) {
    return t.events.back().timestamp - t.events.front().timestamp;
}

Target label_time_to_next_message(DirectionFilter d, const Trace& t, std::size_t k) {
    for (std::size_t i = k; i < t.events.size(); ++i)
        if (qualifies_as_message(t.events[i], d))
            return t.events[i].timestamp - t.events[k - 1].timestamp;
    return Undefined{};
}

Target label_next_activity(const Trace& t, std::size_t k) {
    if (k >= t.events.size()) return Undefined{};
    return t.events[k].activity;
}

Target label_next_participant(const Trace& t, std::size_t k) {
    if (k >= t.events.size()) return Undefined{};
    return t.events[k].participant;
}

Target label_next_message(DirectionFilter d, const Trace& t, std::size_t k) {
    for (std::size_t i = k; i < t.events.size(); ++i)
        if (qualifies_as_message(t.events[i], d)) return message_label(t.events[i]);
    return Undefined{};
}

Target label_next_message_counterpart(DirectionFilter d, const Trace& t, std::size_t k) {
    for (std::size_t i = k; i < t.events.size(); ++i)
        if (qualifies_as_message(t.events[i], d)) return *t.events[i].counterpart;
    return Undefined{};
}

Target label(const PredictionTask& task, const Trace& viewed, std::size_t k) {
    const DirectionFilter d = task.view.direction;
    switch (task.kind) {
    case TaskKind::ParticipantWillAppear:
        return label_outcome_participant(task.target_participant, viewed, k);
    case TaskKind::MessageWillOccur:
        return label_outcome_message(task.target_message, d, viewed, k);
    case TaskKind::RemainingMessages:
        return label_remaining_messages(d, viewed, k);
    case TaskKind::TotalMessages:
        return label_total_messages(d, viewed);
    case TaskKind::RemainingTime:
        return label_remaining_time(viewed, k);
    case TaskKind::TotalDuration:
        return label_total_duration(viewed);
    case TaskKind::TimeToNextMessage:
        return label_time_to_next_message(d, viewed, k);
    case TaskKind::NextActivity:
        return label_next_activity(viewed, k);
    case TaskKind::NextParticipant:
        return label_next_participant(viewed, k);
    case TaskKind::NextMessageLabel:
        return label_next_message(d, viewed, k);
    case TaskKind::NextMessageCounterpart:
        return label_next_message_counterpart(d, viewed, k);
    }
    return Undefined{};
}

const std::vector<TaskTemplate>& task_registry() {
    static const std::vector<TaskTemplate> kRegistry = {
        // id, kind, direction, participant_scoped, scope_flexible, needs_tp, needs_tm
        {"outcome-participant", TaskKind::ParticipantWillAppear, DirectionFilter::Any,
         false, false, true, false},
        {"outcome-message-send", TaskKind::MessageWillOccur, DirectionFilter::SendOnly,
         false, true, false, true},
        {"outcome-message-receive", TaskKind::MessageWillOccur,
         DirectionFilter::ReceiveOnly, false, true, false, true},
        {"remaining-messages-participant", TaskKind::RemainingMessages,
         DirectionFilter::Any, true, false, false, false},
        {"remaining-messages-process", TaskKind::RemainingMessages,
         DirectionFilter::Any, false, false, false, false},
        {"total-messages-participant", TaskKind::TotalMessages, DirectionFilter::Any,
         true, false, false, false},
        {"total-messages-process", TaskKind::TotalMessages, DirectionFilter::Any,
         false, false, false, false},
        {"remaining-time-participant", TaskKind::RemainingTime, DirectionFilter::Any,
         true, false, false, false},
        {"remaining-time-process", TaskKind::RemainingTime, DirectionFilter::Any,
         false, false, false, false},
        {"total-duration-participant", TaskKind::TotalDuration, DirectionFilter::Any,
         true, false, false, false},
        {"total-duration-process", TaskKind::TotalDuration, DirectionFilter::Any,
         false, false, false, false},
        {"time-to-next-message-send", TaskKind::TimeToNextMessage,
         DirectionFilter::SendOnly, false, true, false, false},
        {"time-to-next-message-receive", TaskKind::TimeToNextMessage,
         DirectionFilter::ReceiveOnly, false, true, false, false},
        {"next-activity-participant", TaskKind::NextActivity, DirectionFilter::Any,
         true, false, false, false},
        {"next-activity-process", TaskKind::NextActivity, DirectionFilter::Any,
         false, false, false, false},
        {"next-participant", TaskKind::NextParticipant, DirectionFilter::Any, false,
         false, false, false},
        {"next-message-counterpart-send", TaskKind::NextMessageCounterpart,
         DirectionFilter::SendOnly, false, true, false, false},
        {"next-message-counterpart-receive", TaskKind::NextMessageCounterpart,
         DirectionFilter::ReceiveOnly, false, true, false, false},
        {"next-message-send", TaskKind::NextMessageLabel, DirectionFilter::SendOnly,
         false, true, false, false},
        {"next-message-receive", TaskKind::NextMessageLabel,
         DirectionFilter::ReceiveOnly, false, true, false, false},
    };
    return kRegistry;
}

PredictionTask make_task(const std::string& id, const TaskOptions& opts) {
    const auto& registry = task_registry();
    auto it = std::find_if(registry.begin(), registry.end(),
                           [&](const TaskTemplate& t) { return t.id == id; });
    if (it == registry.end()) throw Error("UnknownTask", "'" + id + "'");

    PredictionTask task;
    task.kind = it->kind;
    task.view.direction = it->direction;
    task.view.content =
        opts.messages_only ? ViewContent::MessagesOnly : ViewContent::AllEvents;

    if (it->needs_target_participant) {
        if (opts.participant.empty())
            throw Error("MissingTaskOption", id + " needs --participant (target)");
        task.target_participant = opts.participant;
    } else if (it->participant_scoped) {
        if (opts.participant.empty())
            throw Error("MissingTaskOption", id + " needs --participant (view)");
        task.view.scope = ViewScope::Participant;
        task.view.participant = opts.participant;
    } else if (it->scope_flexible && !opts.participant.empty()) {
        task.view.scope = ViewScope::Participant;
        task.view.participant = opts.participant;
    }

    if (it->needs_target_message) {
        if (opts.message.empty())
            throw Error("MissingTaskOption", id + " needs --message");
        task.target_message = opts.message;
    }

    if (auto err = validate_task(task)) throw *err;
    return task;
}

} // namespace collabpred
