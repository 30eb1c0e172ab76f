#include "collabpred/event.hpp"

namespace collabpred {

const char* to_string(ElemType t) {
    return t == ElemType::User ? "user" : "message";
}

const char* to_string(Direction d) {
    switch (d) {
    case Direction::Send: return "send";
    case Direction::Receive: return "receive";
    default: return "none";
    }
}

const std::string& message_label(const Event& e) {
    auto it = e.extra.find("msgName");
    if (it != e.extra.end() && !it->second.empty()) return it->second;
    return e.activity;
}

EventLog EventLog::from_traces(std::vector<Trace> traces) {
    EventLog log;
    log.traces = std::move(traces);
    for (const Trace& t : log.traces) {
        for (const Event& e : t.events) {
            log.participants.insert(e.participant);
            log.activities.insert(e.activity);
            if (e.elem_type == ElemType::Message)
                log.message_labels.insert(message_label(e));
        }
    }
    return log;
}

std::optional<Error> validate_event(const Event& e) {
    if (e.case_id.empty()) return Error("EmptyField", "event has empty case_id");
    if (e.activity.empty())
        return Error("EmptyField", "event in case '" + e.case_id + "' has empty activity");
    if (e.participant.empty())
        return Error("EmptyField", "event '" + e.activity + "' in case '" + e.case_id +
                                       "' has empty participant");
    if (e.elem_type == ElemType::User) {
        if (e.direction != Direction::None)
            return Error("UserEventWithCounterpart",
                         "user event '" + e.activity + "' carries a message direction");
        if (e.counterpart.has_value())
            return Error("UserEventWithCounterpart",
                         "user event '" + e.activity + "' carries counterpart '" +
                             *e.counterpart + "'");
    } else {
        if (e.direction == Direction::None)
            return Error("MessageEventMissingCounterpart",
                         "message event '" + e.activity + "' has no direction");
        if (!e.counterpart.has_value() || e.counterpart->empty())
            return Error("MessageEventMissingCounterpart",
                         "message event '" + e.activity + "' has no counterpart");
        if (*e.counterpart == e.participant)
            return Error("SelfMessage", "message event '" + e.activity +
                                            "' sent by '" + e.participant +
                                            "' to itself");
    }
    return std::nullopt;
}

std::optional<Error> validate_trace(const Trace& t) {
    if (t.events.empty()) return Error("EmptyTrace", "trace '" + t.case_id + "' has no events");
    for (std::size_t i = 0; i < t.events.size(); ++i) {
        const Event& e = t.events[i];
        if (e.case_id != t.case_id)
            return Error("TraceCaseIdMismatch",
                         "trace '" + t.case_id + "' holds event with case_id '" +
                             e.case_id + "' at position " + std::to_string(i + 1));
        if (auto err = validate_event(e)) return err;
        if (i > 0 && e.timestamp < t.events[i - 1].timestamp)
            return Error("NonMonotoneTimestamps",
                         "trace '" + t.case_id + "' position " + std::to_string(i + 1));
    }
    return std::nullopt;
}

std::optional<Error> validate_log(const EventLog& log) {
    std::set<std::string> seen;
    EventLog recomputed = EventLog::from_traces(log.traces);
    for (const Trace& t : log.traces) {
        if (!seen.insert(t.case_id).second)
            return Error("DuplicateCaseId", "case_id '" + t.case_id + "'");
        if (auto err = validate_trace(t)) return err;
    }
    if (recomputed.participants != log.participants ||
        recomputed.activities != log.activities ||
        recomputed.message_labels != log.message_labels)
        return Error("AlphabetMismatch",
                     "log alphabets do not match the values occurring in traces");
    return std::nullopt;
}

void require_valid(const EventLog& log) {
    if (auto err = validate_log(log)) throw *err;
}

std::size_t event_count(const EventLog& log) {
    std::size_t n = 0;
    for (const Trace& t : log.traces) n += t.events.size();
    return n;
}

} // namespace collabpred
