#pragma once

#include <string>
#include <string_view>

#include "collabpred/event.hpp"

namespace collabpred {

/// Parses the XES subset carrying the collaborative extension attributes
/// ("participant", "elemType", "fromParticipant", "toParticipant", optional
/// "msgName"). elemType "message" (case-insensitive) yields a Message event,
/// anything else a User event; fromParticipant implies Receive, toParticipant
/// implies Send. Other event-level string attributes pass through to extra;
/// non-string attributes besides time:timestamp are ignored.
/// Throws Error: MalformedXml, MissingConceptName, MissingTimestamp,
/// UnparseableTimestamp, BothFromAndTo, plus propagated validation errors.
EventLog parse_xes(std::string_view document);

/// Deterministic emitter; parse_xes(write_xes(log)) == log field for field.
std::string write_xes(const EventLog& log);

} // namespace collabpred
