#pragma once

#include <string>
#include <string_view>

#include "collabpred/event.hpp"

namespace collabpred {

/// Maps the canonical fields onto source column names. case/activity/
/// timestamp/participant are mandatory; the others are optional (empty name
/// = column absent, elemType defaults to user). timestamp_format is either
/// "iso8601" or a token pattern over %Y %m %d %H %M %S %f (milliseconds)
/// and %z (UTC offset) plus literal characters.
struct ColumnMapping {
    std::string case_col = "case_id";
    std::string activity_col = "activity";
    std::string timestamp_col = "timestamp";
    std::string participant_col = "participant";
    std::string elem_type_col = "elemType";
    std::string from_col = "fromParticipant";
    std::string to_col = "toParticipant";
    std::string msg_name_col = "msgName";
    std::string timestamp_format = "iso8601";
};

/// RFC-4180 style CSV: comma separator, double-quote escaping, UTF-8, LF.
/// Rows are grouped by the case column in order of first appearance and
/// ordered by timestamp within a case (stable for ties). Unknown columns
/// with non-empty values pass through to Event.extra.
/// Throws Error: MissingColumn, UnparseableTimestamp, BothFromAndTo, plus
/// propagated validation errors.
EventLog parse_csv(std::string_view document, const ColumnMapping& mapping);

/// Byte-deterministic: traces in log order, events in trace order, mapped
/// columns in mapping order followed by the sorted union of extra keys.
std::string write_csv(const EventLog& log, const ColumnMapping& mapping);

} // namespace collabpred
