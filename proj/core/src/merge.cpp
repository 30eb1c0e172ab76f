#include "collabpred/merge.hpp"

#include <algorithm>

#include "collabpred/error.hpp"

namespace collabpred {

namespace {

bool merge_before(const Event& a, const Event& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    if (direction_rank(a) != direction_rank(b))
        return direction_rank(a) < direction_rank(b);
    return a.participant < b.participant;
}

} // namespace

int direction_rank(const Event& e) {
    if (e.elem_type == ElemType::Message)
        return e.direction == Direction::Send ? 0 : 1;
    return 2;
}

EventLog merge_logs(const std::vector<EventLog>& parts) {
    for (const EventLog& part : parts) require_valid(part);

    // case_id -> events tagged with their input index, in stable input order.
    std::map<std::string, std::vector<std::pair<std::size_t, const Event*>>> by_case;
    for (std::size_t input = 0; input < parts.size(); ++input)
        for (const Trace& t : parts[input].traces)
            for (const Event& e : t.events)
                by_case[t.case_id].emplace_back(input, &e);

    std::vector<Trace> traces;
    traces.reserve(by_case.size());
    for (auto& [case_id, tagged] : by_case) {
        for (std::size_t i = 0; i < tagged.size(); ++i)
            for (std::size_t j = i + 1; j < tagged.size(); ++j)
                if (tagged[i].first != tagged[j].first &&
                    *tagged[i].second == *tagged[j].second)
                    throw Error("ConflictingEvent",
                                "case '" + case_id + "': inputs " +
                                    std::to_string(tagged[i].first + 1) + " and " +
                                    std::to_string(tagged[j].first + 1) +
                                    " both contain event '" +
                                    tagged[i].second->activity + "' of participant '" +
                                    tagged[i].second->participant + "'");
        std::stable_sort(tagged.begin(), tagged.end(),
                         [](const auto& a, const auto& b) {
                             return merge_before(*a.second, *b.second);
                         });
        Trace t;
        t.case_id = case_id;
        t.events.reserve(tagged.size());
        for (const auto& [input, e] : tagged) t.events.push_back(*e);
        traces.push_back(std::move(t));
    }

    EventLog merged = EventLog::from_traces(std::move(traces));
    require_valid(merged);
    return merged;
}

std::map<std::string, EventLog> split_log(const EventLog& collab) {
    std::map<std::string, std::vector<Trace>> parts;
    for (const std::string& p : collab.participants) parts[p];
    for (const Trace& t : collab.traces) {
        std::map<std::string, Trace> local;
        for (const Event& e : t.events) {
            auto [it, fresh] = local.try_emplace(e.participant);
            if (fresh) it->second.case_id = t.case_id;
            it->second.events.push_back(e);
        }
        for (auto& [p, trace] : local) parts[p].push_back(std::move(trace));
    }
    std::map<std::string, EventLog> out;
    for (auto& [p, traces] : parts) out[p] = EventLog::from_traces(std::move(traces));
    return out;
}

EventLog normalize_log(const EventLog& log) {
    std::vector<Trace> traces = log.traces;
    std::sort(traces.begin(), traces.end(),
              [](const Trace& a, const Trace& b) { return a.case_id < b.case_id; });
    for (Trace& t : traces)
        std::stable_sort(t.events.begin(), t.events.end(), merge_before);
    return EventLog::from_traces(std::move(traces));
}

} // namespace collabpred
