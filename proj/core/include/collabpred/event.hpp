#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "collabpred/error.hpp"
#include "collabpred/time.hpp"

namespace collabpred {

enum class ElemType { User, Message };
enum class Direction { None, Send, Receive };

/// One log record. Message events carry a direction and the counterpart
/// participant (the fromParticipant/toParticipant value); user events carry
/// neither. Treated as immutable once built.
struct Event {
    std::string case_id;
    std::string activity;
    Timestamp timestamp{};
    std::string participant;
    ElemType elem_type = ElemType::User;
    Direction direction = Direction::None;
    std::optional<std::string> counterpart;
    std::map<std::string, std::string> extra;

    bool operator==(const Event&) const = default;
};

struct Trace {
    std::string case_id;
    std::vector<Event> events;

    bool operator==(const Trace&) const = default;
};

/// A set of collaborative cases plus the alphabets occurring in them.
/// Build via from_traces so the alphabets stay consistent.
struct EventLog {
    std::vector<Trace> traces;
    std::set<std::string> participants;
    std::set<std::string> activities;
    std::set<std::string> message_labels;

    static EventLog from_traces(std::vector<Trace> traces);

    bool operator==(const EventLog&) const = default;
};

/// First k events of a trace; 1 <= k <= trace length.
struct Prefix {
    const Trace* trace = nullptr;
    std::size_t k = 0;

    std::span<const Event> events() const { return {trace->events.data(), k}; }
};

/// The label a message event is known by: the "msgName" pass-through
/// attribute when present and non-empty, the activity name otherwise.
const std::string& message_label(const Event& e);

std::optional<Error> validate_event(const Event& e);
std::optional<Error> validate_trace(const Trace& t);
std::optional<Error> validate_log(const EventLog& log);

/// Throws the validation error, if any.
void require_valid(const EventLog& log);

std::size_t event_count(const EventLog& log);

const char* to_string(ElemType t);
const char* to_string(Direction d);

} // namespace collabpred
