#include "collabpred/csv.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>

#include "collabpred/error.hpp"

namespace collabpred {

namespace {

std::vector<std::string> split_record(std::string_view text, std::size_t& pos) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    while (pos < text.size()) {
        const char c = text[pos];
        if (quoted) {
            if (c == '"') {
                if (pos + 1 < text.size() && text[pos + 1] == '"') {
                    field += '"';
                    pos += 2;
                } else {
                    quoted = false;
                    ++pos;
                }
            } else {
                field += c;
                ++pos;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
            ++pos;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
            ++pos;
        } else if (c == '\n') {
            ++pos;
            break;
        } else if (c == '\r') {
            ++pos;
            if (pos < text.size() && text[pos] == '\n') ++pos;
            break;
        } else {
            field += c;
            ++pos;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

void append_field(std::string& out, std::string_view value) {
    const bool needs_quotes =
        value.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quotes) {
        out += value;
        return;
    }
    out += '"';
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

// Token timestamp formats for non-ISO sources; always read/written as UTC.
std::string format_with_tokens(Timestamp t, const std::string& fmt) {
    const std::string iso = format_iso8601(t); // YYYY-MM-DDTHH:MM:SS.fff+00:00
    std::string out;
    for (std::size_t i = 0; i < fmt.size(); ++i) {
        if (fmt[i] != '%' || i + 1 == fmt.size()) {
            out += fmt[i];
            continue;
        }
        switch (fmt[++i]) {
        case 'Y': out += iso.substr(0, 4); break;
        case 'm': out += iso.substr(5, 2); break;
        case 'd': out += iso.substr(8, 2); break;
        case 'H': out += iso.substr(11, 2); break;
        case 'M': out += iso.substr(14, 2); break;
        case 'S': out += iso.substr(17, 2); break;
        case 'f': out += iso.substr(20, 3); break;
        case 'z': out += "+00:00"; break;
        case '%': out += '%'; break;
        default: out += '%'; out += fmt[i];
        }
    }
    return out;
}

std::optional<Timestamp> parse_with_tokens(std::string_view s, const std::string& fmt) {
    // Reassemble an ISO string from the fields found, then reuse the ISO parser.
    std::string y = "1970", mo = "01", d = "01", h = "00", mi = "00", sec = "00",
                f = "000", z;
    std::size_t pos = 0;
    auto take = [&](std::size_t n, std::string& dst) {
        if (pos + n > s.size()) return false;
        for (std::size_t i = 0; i < n; ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[pos + i]))) return false;
        dst = std::string(s.substr(pos, n));
        pos += n;
        return true;
    };
    for (std::size_t i = 0; i < fmt.size(); ++i) {
        if (fmt[i] != '%' || i + 1 == fmt.size()) {
            if (pos >= s.size() || s[pos] != fmt[i]) return std::nullopt;
            ++pos;
            continue;
        }
        bool ok = true;
        switch (fmt[++i]) {
        case 'Y': ok = take(4, y); break;
        case 'm': ok = take(2, mo); break;
        case 'd': ok = take(2, d); break;
        case 'H': ok = take(2, h); break;
        case 'M': ok = take(2, mi); break;
        case 'S': ok = take(2, sec); break;
        case 'f': ok = take(3, f); break;
        case 'z': {
            z = std::string(s.substr(pos));
            pos = s.size();
            break;
        }
        case '%':
            if (pos >= s.size() || s[pos] != '%') return std::nullopt;
            ++pos;
            break;
        default: return std::nullopt;
        }
        if (!ok) return std::nullopt;
    }
    if (pos != s.size()) return std::nullopt;
    return parse_iso8601(y + "-" + mo + "-" + d + "T" + h + ":" + mi + ":" + sec +
                         "." + f + z);
}

std::optional<Timestamp> parse_timestamp(std::string_view s, const ColumnMapping& m) {
    if (m.timestamp_format == "iso8601") return parse_iso8601(s);
    return parse_with_tokens(s, m.timestamp_format);
}

std::string format_timestamp(Timestamp t, const ColumnMapping& m) {
    if (m.timestamp_format == "iso8601") return format_iso8601(t);
    return format_with_tokens(t, m.timestamp_format);
}

bool is_message_word(std::string_view v) {
    if (v.size() != 7) return false;
    static constexpr std::string_view kWord = "message";
    for (std::size_t i = 0; i < 7; ++i)
        if (std::tolower(static_cast<unsigned char>(v[i])) != kWord[i]) return false;
    return true;
}

// Mapped columns in canonical order; optional ones only when mapped.
std::vector<std::pair<std::string, int>> mapped_columns(const ColumnMapping& m) {
    std::vector<std::pair<std::string, int>> cols;
    cols.emplace_back(m.case_col, 0);
    cols.emplace_back(m.activity_col, 1);
    cols.emplace_back(m.timestamp_col, 2);
    cols.emplace_back(m.participant_col, 3);
    if (!m.elem_type_col.empty()) cols.emplace_back(m.elem_type_col, 4);
    if (!m.from_col.empty()) cols.emplace_back(m.from_col, 5);
    if (!m.to_col.empty()) cols.emplace_back(m.to_col, 6);
    if (!m.msg_name_col.empty()) cols.emplace_back(m.msg_name_col, 7);
    return cols;
}

} // namespace

EventLog parse_csv(std::string_view document, const ColumnMapping& mapping) {
    std::size_t pos = 0;
    if (document.empty())
        throw Error("MissingColumn", mapping.case_col + " (no header row)");
    const std::vector<std::string> header = split_record(document, pos);

    auto column_index = [&](const std::string& name) -> int {
        auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : static_cast<int>(it - header.begin());
    };
    auto required = [&](const std::string& name) {
        const int idx = column_index(name);
        if (idx < 0) throw Error("MissingColumn", name);
        return idx;
    };

    const int case_idx = required(mapping.case_col);
    const int activity_idx = required(mapping.activity_col);
    const int ts_idx = required(mapping.timestamp_col);
    const int participant_idx = required(mapping.participant_col);
    const int elem_idx = mapping.elem_type_col.empty() ? -1 : column_index(mapping.elem_type_col);
    const int from_idx = mapping.from_col.empty() ? -1 : column_index(mapping.from_col);
    const int to_idx = mapping.to_col.empty() ? -1 : column_index(mapping.to_col);
    const int msg_idx = mapping.msg_name_col.empty() ? -1 : column_index(mapping.msg_name_col);

    std::vector<bool> known(header.size(), false);
    for (int idx : {case_idx, activity_idx, ts_idx, participant_idx, elem_idx,
                    from_idx, to_idx, msg_idx})
        if (idx >= 0) known[static_cast<std::size_t>(idx)] = true;

    std::vector<std::string> case_order;
    std::map<std::string, std::vector<Event>> by_case;
    std::size_t row_no = 1;
    while (pos < document.size()) {
        ++row_no;
        const std::vector<std::string> fields = split_record(document, pos);
        if (fields.size() == 1 && fields[0].empty()) continue; // blank line
        auto field = [&](int idx) -> std::string_view {
            return idx >= 0 && static_cast<std::size_t>(idx) < fields.size()
                       ? std::string_view(fields[static_cast<std::size_t>(idx)])
                       : std::string_view();
        };

        Event e;
        e.case_id = field(case_idx);
        e.activity = field(activity_idx);
        e.participant = field(participant_idx);
        auto ts = parse_timestamp(field(ts_idx), mapping);
        if (!ts)
            throw Error("UnparseableTimestamp",
                        "row " + std::to_string(row_no) + ": '" +
                            std::string(field(ts_idx)) + "'");
        e.timestamp = *ts;

        const std::string_view from = field(from_idx);
        const std::string_view to = field(to_idx);
        if (!from.empty() && !to.empty())
            throw Error("BothFromAndTo", "row " + std::to_string(row_no));
        e.elem_type = is_message_word(field(elem_idx)) ? ElemType::Message
                                                       : ElemType::User;
        if (!from.empty()) {
            e.direction = Direction::Receive;
            e.counterpart = std::string(from);
        } else if (!to.empty()) {
            e.direction = Direction::Send;
            e.counterpart = std::string(to);
        }
        if (msg_idx >= 0 && !field(msg_idx).empty())
            e.extra["msgName"] = std::string(field(msg_idx));
        for (std::size_t i = 0; i < fields.size() && i < header.size(); ++i)
            if (!known[i] && !fields[i].empty()) e.extra[header[i]] = fields[i];

        auto [it, fresh] = by_case.try_emplace(e.case_id);
        if (fresh) case_order.push_back(e.case_id);
        it->second.push_back(std::move(e));
    }

    std::vector<Trace> traces;
    traces.reserve(case_order.size());
    for (const std::string& case_id : case_order) {
        Trace t;
        t.case_id = case_id;
        t.events = std::move(by_case[case_id]);
        std::stable_sort(t.events.begin(), t.events.end(),
                         [](const Event& a, const Event& b) {
                             return a.timestamp < b.timestamp;
                         });
        traces.push_back(std::move(t));
    }

    EventLog log = EventLog::from_traces(std::move(traces));
    require_valid(log);
    return log;
}

std::string write_csv(const EventLog& log, const ColumnMapping& mapping) {
    const auto cols = mapped_columns(mapping);

    std::set<std::string> extra_keys;
    for (const Trace& t : log.traces)
        for (const Event& e : t.events)
            for (const auto& [k, v] : e.extra) extra_keys.insert(k);
    if (!mapping.msg_name_col.empty()) extra_keys.erase("msgName");

    std::string out;
    bool first = true;
    for (const auto& [name, field] : cols) {
        if (!first) out += ',';
        append_field(out, name);
        first = false;
    }
    for (const std::string& k : extra_keys) {
        out += ',';
        append_field(out, k);
    }
    out += '\n';

    for (const Trace& t : log.traces) {
        for (const Event& e : t.events) {
            first = true;
            for (const auto& [name, field] : cols) {
                if (!first) out += ',';
                first = false;
                switch (field) {
                case 0: append_field(out, e.case_id); break;
                case 1: append_field(out, e.activity); break;
                case 2: append_field(out, format_timestamp(e.timestamp, mapping)); break;
                case 3: append_field(out, e.participant); break;
                case 4: append_field(out, to_string(e.elem_type)); break;
                case 5:
                    if (e.direction == Direction::Receive)
                        append_field(out, *e.counterpart);
                    break;
                case 6:
                    if (e.direction == Direction::Send)
                        append_field(out, *e.counterpart);
                    break;
                case 7: {
                    auto it = e.extra.find("msgName");
                    if (it != e.extra.end()) append_field(out, it->second);
                    break;
                }
                }
            }
            for (const std::string& k : extra_keys) {
                out += ',';
                auto it = e.extra.find(k);
                if (it != e.extra.end()) append_field(out, it->second);
            }
            out += '\n';
        }
    }
    return out;
}

} // namespace collabpred
