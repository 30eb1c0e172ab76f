#pragma once

#include <cstddef>
#include <string>

#include "collabpred/event.hpp"

namespace collabpred {

enum class ViewScope { Process, Participant };
enum class ViewContent { AllEvents, MessagesOnly };
enum class DirectionFilter { Any, SendOnly, ReceiveOnly };

/// A deterministic log filter: whole process or one participant, all events
/// or messages only, optionally one message direction.
struct ViewSpec {
    ViewScope scope = ViewScope::Process;
    std::string participant; // required iff scope == Participant
    ViewContent content = ViewContent::AllEvents;
    DirectionFilter direction = DirectionFilter::Any;

    bool operator==(const ViewSpec&) const = default;
};

bool event_in_view(const Event& e, const ViewSpec& v);

struct ViewResult {
    EventLog log;
    std::size_t dropped_traces = 0; // traces with no event left in the view
};

/// Keeps exactly the events satisfying the view, preserving relative order;
/// traces that become empty are dropped and counted; alphabets recomputed.
/// Throws Error("UnknownParticipant") if the view names a participant the
/// log does not contain.
ViewResult apply_view_counted(const EventLog& log, const ViewSpec& v);
EventLog apply_view(const EventLog& log, const ViewSpec& v);

const char* to_string(ViewScope s);
const char* to_string(ViewContent c);
const char* to_string(DirectionFilter d);

} // namespace collabpred
