#include "collabpred/dataset.hpp"

#include <json.hpp>

#include <algorithm>

#include "collabpred/csv.hpp"
#include "collabpred/hash.hpp"
#include "serial_detail.hpp"

namespace collabpred {

namespace {

constexpr char kSep = '\x1f';
constexpr char kStart = '\x02';

std::string escape_token(std::string_view token) {
    std::string out;
    out.reserve(token.size());
    for (char c : token) {
        switch (c) {
        case '\\': out += "\\\\"; break;
        case kSep: out += "\\u"; break;
        case kStart: out += "\\s"; break;
        default: out += c;
        }
    }
    return out;
}

std::string unescape_token(std::string_view token) {
    std::string out;
    out.reserve(token.size());
    for (std::size_t i = 0; i < token.size(); ++i) {
        if (token[i] != '\\' || i + 1 == token.size()) {
            out += token[i];
            continue;
        }
        switch (token[++i]) {
        case '\\': out += '\\'; break;
        case 'u': out += kSep; break;
        case 's': out += kStart; break;
        default: out += token[i];
        }
    }
    return out;
}

} // namespace

StateKey encode_prefix(const Trace& viewed, std::size_t k, const EncoderConfig& enc) {
    StateKey key;
    const int order = enc.order;
    for (int slot = 0; slot < order; ++slot) {
        if (slot > 0) key += kSep;
        // slot 0 is the oldest of the last `order` positions.
        const std::int64_t idx =
            static_cast<std::int64_t>(k) - order + slot; // 0-based event index
        if (idx < 0)
            key += kStart;
        else
            key += escape_token(viewed.events[static_cast<std::size_t>(idx)].activity);
    }
    const Event& last = viewed.events[k - 1];
    if (enc.with_participant) {
        if (!key.empty()) key += kSep;
        key += escape_token(last.participant);
    }
    if (enc.with_direction) {
        if (!key.empty()) key += kSep;
        key += to_string(last.direction);
    }
    return key;
}

StateKey backoff_key(const StateKey& full, int keep, const EncoderConfig& enc) {
    if (keep <= 0) return {};
    std::vector<std::string> raw;
    std::string current;
    for (char c : full) {
        if (c == kSep) {
            raw.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    raw.push_back(std::move(current));

    const int attrs = (enc.with_participant ? 1 : 0) + (enc.with_direction ? 1 : 0);
    const int activities = static_cast<int>(raw.size()) - attrs;
    StateKey key;
    bool first = true;
    for (int i = std::max(0, activities - keep); i < static_cast<int>(raw.size()); ++i) {
        if (!first) key += kSep;
        first = false;
        key += raw[static_cast<std::size_t>(i)];
    }
    return key;
}

std::vector<std::string> state_tokens(const StateKey& key) {
    std::vector<std::string> out;
    std::string current;
    for (char c : key) {
        if (c == kSep) {
            out.push_back(unescape_token(current));
            current.clear();
        } else {
            current += c;
        }
    }
    out.push_back(unescape_token(current));
    return out;
}

std::string log_hash(const EventLog& log) {
    return to_hex(fnv1a64(write_csv(log, ColumnMapping{})));
}

Dataset generate_dataset(const EventLog& log, const PredictionTask& task,
                         const EncoderConfig& enc) {
    if (auto err = validate_task(task)) throw *err;
    const ViewResult viewed = apply_view_counted(log, trace_view(task));
    if (viewed.log.traces.empty())
        throw Error("EmptyAfterView", "no trace left in the task view");

    Dataset ds;
    ds.task = task;
    ds.encoder = enc;
    ds.dropped_traces = static_cast<std::int64_t>(viewed.dropped_traces);
    // Canonical provenance: a single-orchestration log is recorded under its
    // participant's scope, so the same data always yields the same dataset.
    if (ds.task.view.scope == ViewScope::Process &&
        viewed.log.participants.size() == 1) {
        ds.task.view.scope = ViewScope::Participant;
        ds.task.view.participant = *viewed.log.participants.begin();
    }
    ds.source_log_hash = log_hash(viewed.log);

    const bool outcome_task = family_of(task.kind) == TaskFamily::Outcome;
    for (const Trace& t : viewed.log.traces) {
        bool witnessed = false;
        for (std::size_t k = 1; k <= t.events.size(); ++k) {
            if (enc.skip_witnessed && outcome_task) {
                const Event& e = t.events[k - 1];
                if (task.kind == TaskKind::ParticipantWillAppear) {
                    witnessed = witnessed || e.participant == task.target_participant;
                } else {
                    ViewSpec qualifier;
                    qualifier.content = ViewContent::MessagesOnly;
                    qualifier.direction = task.view.direction;
                    witnessed = witnessed || (event_in_view(e, qualifier) &&
                                              message_label(e) == task.target_message);
                }
                if (witnessed) {
                    ++ds.skipped_witnessed;
                    continue;
                }
            }
            Target target = label(ds.task, t, k);
            if (is_undefined(target)) {
                ++ds.skipped_undefined;
                continue;
            }
            ds.rows.push_back({encode_prefix(t, k, enc), std::move(target)});
        }
    }
    return ds;
}

namespace serial {

using nlohmann::ordered_json;

ordered_json view_to_json(const ViewSpec& v) {
    ordered_json j;
    j["scope"] = to_string(v.scope);
    if (v.scope == ViewScope::Participant) j["participant"] = v.participant;
    j["content"] = to_string(v.content);
    j["direction"] = to_string(v.direction);
    return j;
}

ViewSpec view_from_json(const ordered_json& j) {
    ViewSpec v;
    const std::string scope = j.at("scope").get<std::string>();
    if (scope == "participant") {
        v.scope = ViewScope::Participant;
        v.participant = j.at("participant").get<std::string>();
    } else if (scope != "process") {
        throw Error("MalformedFile", "unknown view scope '" + scope + "'");
    }
    const std::string content = j.at("content").get<std::string>();
    if (content == "messages")
        v.content = ViewContent::MessagesOnly;
    else if (content != "all")
        throw Error("MalformedFile", "unknown view content '" + content + "'");
    const std::string direction = j.at("direction").get<std::string>();
    if (direction == "send")
        v.direction = DirectionFilter::SendOnly;
    else if (direction == "receive")
        v.direction = DirectionFilter::ReceiveOnly;
    else if (direction != "any")
        throw Error("MalformedFile", "unknown view direction '" + direction + "'");
    return v;
}

ordered_json task_to_json(const PredictionTask& t) {
    ordered_json j;
    j["kind"] = to_string(t.kind);
    j["view"] = view_to_json(t.view);
    if (!t.target_participant.empty()) j["target_participant"] = t.target_participant;
    if (!t.target_message.empty()) j["target_message"] = t.target_message;
    return j;
}

PredictionTask task_from_json(const ordered_json& j) {
    PredictionTask t;
    const std::string kind = j.at("kind").get<std::string>();
    auto k = task_kind_from_string(kind);
    if (!k) throw Error("MalformedFile", "unknown task kind '" + kind + "'");
    t.kind = *k;
    t.view = view_from_json(j.at("view"));
    if (j.contains("target_participant"))
        t.target_participant = j["target_participant"].get<std::string>();
    if (j.contains("target_message"))
        t.target_message = j["target_message"].get<std::string>();
    return t;
}

ordered_json encoder_to_json(const EncoderConfig& e) {
    ordered_json j;
    j["order"] = e.order;
    j["with_participant"] = e.with_participant;
    j["with_direction"] = e.with_direction;
    j["skip_witnessed"] = e.skip_witnessed;
    return j;
}

EncoderConfig encoder_from_json(const ordered_json& j) {
    EncoderConfig e;
    e.order = j.at("order").get<int>();
    e.with_participant = j.at("with_participant").get<bool>();
    e.with_direction = j.at("with_direction").get<bool>();
    e.skip_witnessed = j.at("skip_witnessed").get<bool>();
    return e;
}

Target target_from_string(TaskKind kind, const std::string& s) {
    switch (family_of(kind)) {
    case TaskFamily::Outcome:
        if (s == "true") return true;
        if (s == "false") return false;
        throw Error("MalformedFile", "bad boolean target '" + s + "'");
    case TaskFamily::Numeric: {
        std::int64_t v = 0;
        try {
            v = std::stoll(s);
        } catch (const std::exception&) {
            throw Error("MalformedFile", "bad numeric target '" + s + "'");
        }
        if (kind == TaskKind::RemainingMessages || kind == TaskKind::TotalMessages)
            return v;
        return Duration(v);
    }
    default:
        return s;
    }
}

} // namespace serial

std::string write_dataset(const Dataset& ds) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["format"] = "collabpred-dataset";
    j["schema_version"] = 1;
    j["task"] = serial::task_to_json(ds.task);
    j["encoder"] = serial::encoder_to_json(ds.encoder);
    j["source_log_hash"] = ds.source_log_hash;
    j["skipped_undefined"] = ds.skipped_undefined;
    j["skipped_witnessed"] = ds.skipped_witnessed;
    j["dropped_traces"] = ds.dropped_traces;
    ordered_json rows = ordered_json::array();
    for (const DatasetRow& row : ds.rows)
        rows.push_back(ordered_json::array({row.state, target_to_string(row.target)}));
    j["rows"] = std::move(rows);
    return j.dump(1) + "\n";
}

Dataset parse_dataset(std::string_view text) {
    using nlohmann::ordered_json;
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw Error("MalformedFile", e.what());
    }
    try {
        if (j.at("format").get<std::string>() != "collabpred-dataset")
            throw Error("MalformedFile", "not a dataset file");
        if (j.at("schema_version").get<int>() != 1)
            throw Error("ModelVersionMismatch",
                        "dataset schema_version " + j["schema_version"].dump());
        Dataset ds;
        ds.task = serial::task_from_json(j.at("task"));
        ds.encoder = serial::encoder_from_json(j.at("encoder"));
        ds.source_log_hash = j.at("source_log_hash").get<std::string>();
        ds.skipped_undefined = j.at("skipped_undefined").get<std::int64_t>();
        ds.skipped_witnessed = j.at("skipped_witnessed").get<std::int64_t>();
        ds.dropped_traces = j.at("dropped_traces").get<std::int64_t>();
        for (const auto& row : j.at("rows")) {
            ds.rows.push_back(
                {row.at(0).get<std::string>(),
                 serial::target_from_string(ds.task.kind, row.at(1).get<std::string>())});
        }
        return ds;
    } catch (const ordered_json::exception& e) {
        throw Error("MalformedFile", e.what());
    }
}

} // namespace collabpred
