#include "collabpred/view.hpp"

#include "collabpred/error.hpp"

namespace collabpred {

const char* to_string(ViewScope s) {
    return s == ViewScope::Process ? "process" : "participant";
}

const char* to_string(ViewContent c) {
    return c == ViewContent::AllEvents ? "all" : "messages";
}

const char* to_string(DirectionFilter d) {
    switch (d) {
    case DirectionFilter::SendOnly: return "send";
    case DirectionFilter::ReceiveOnly: return "receive";
    default: return "any";
    }
}

bool event_in_view(const Event& e, const ViewSpec& v) {
    if (v.scope == ViewScope::Participant && e.participant != v.participant)
        return false;
    if (v.content == ViewContent::MessagesOnly && e.elem_type != ElemType::Message)
        return false;
    if (v.direction == DirectionFilter::SendOnly && e.direction != Direction::Send)
        return false;
    if (v.direction == DirectionFilter::ReceiveOnly && e.direction != Direction::Receive)
        return false;
    return true;
}

ViewResult apply_view_counted(const EventLog& log, const ViewSpec& v) {
    if (v.scope == ViewScope::Participant && !log.participants.contains(v.participant))
        throw Error("UnknownParticipant", "'" + v.participant + "'");

    ViewResult result;
    std::vector<Trace> traces;
    for (const Trace& t : log.traces) {
        Trace filtered;
        filtered.case_id = t.case_id;
        for (const Event& e : t.events)
            if (event_in_view(e, v)) filtered.events.push_back(e);
        if (filtered.events.empty())
            ++result.dropped_traces;
        else
            traces.push_back(std::move(filtered));
    }
    result.log = EventLog::from_traces(std::move(traces));
    return result;
}

EventLog apply_view(const EventLog& log, const ViewSpec& v) {
    return apply_view_counted(log, v).log;
}

} // namespace collabpred
