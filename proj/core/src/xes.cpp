#include "collabpred/xes.hpp"

#include <expat.h>

#include <algorithm>
#include <cctype>
#include <sstream>

#include "collabpred/error.hpp"

namespace collabpred {

namespace {

struct XmlNode {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attrs;
    std::vector<XmlNode> children;

    const std::string* attr(std::string_view key) const {
        for (const auto& [k, v] : attrs)
            if (k == key) return &v;
        return nullptr;
    }
};

struct DomBuilder {
    XmlNode root;
    std::vector<XmlNode*> stack;
};

void XMLCALL on_start(void* user, const XML_Char* name, const XML_Char** atts) {
    auto* b = static_cast<DomBuilder*>(user);
    XmlNode* parent = b->stack.empty() ? nullptr : b->stack.back();
    XmlNode node;
    node.name = name;
    for (int i = 0; atts[i]; i += 2)
        node.attrs.emplace_back(atts[i], atts[i + 1]);
    if (!parent) {
        b->root = std::move(node);
        b->stack.push_back(&b->root);
    } else {
        parent->children.push_back(std::move(node));
        b->stack.push_back(&parent->children.back());
    }
}

void XMLCALL on_end(void* user, const XML_Char*) {
    static_cast<DomBuilder*>(user)->stack.pop_back();
}

XmlNode parse_xml(std::string_view document) {
    DomBuilder builder;
    XML_Parser parser = XML_ParserCreate("UTF-8");
    if (!parser) throw Error("MalformedXml", "cannot create parser");
    XML_SetUserData(parser, &builder);
    XML_SetElementHandler(parser, on_start, on_end);
    const XML_Status st = XML_Parse(parser, document.data(),
                                    static_cast<int>(document.size()), 1);
    if (st != XML_STATUS_OK) {
        std::ostringstream msg;
        msg << XML_ErrorString(XML_GetErrorCode(parser)) << " at line "
            << XML_GetCurrentLineNumber(parser);
        XML_ParserFree(parser);
        throw Error("MalformedXml", msg.str());
    }
    XML_ParserFree(parser);
    if (builder.root.name.empty())
        throw Error("MalformedXml", "document has no root element");
    return builder.root;
}

bool is_message_elem_type(std::string_view v) {
    if (v.size() != 7) return false;
    static constexpr std::string_view kWord = "message";
    for (std::size_t i = 0; i < 7; ++i)
        if (std::tolower(static_cast<unsigned char>(v[i])) != kWord[i]) return false;
    return true;
}

// Children named string/date/int/float/boolean/id are XES attributes.
bool is_attribute_element(const std::string& name) {
    return name == "string" || name == "date" || name == "int" ||
           name == "float" || name == "boolean" || name == "id";
}

Event parse_event(const XmlNode& node, const std::string& case_id,
                  std::size_t trace_no, std::size_t event_no) {
    const std::string where = "trace " + std::to_string(trace_no) + " event " +
                              std::to_string(event_no);
    Event e;
    e.case_id = case_id;
    bool have_timestamp = false;
    std::string from, to, elem_type;
    for (const XmlNode& child : node.children) {
        if (!is_attribute_element(child.name)) continue;
        const std::string* key = child.attr("key");
        const std::string* value = child.attr("value");
        if (!key || !value) continue;
        if (*key == "time:timestamp") {
            auto ts = parse_iso8601(*value);
            if (!ts) throw Error("UnparseableTimestamp", where + ": '" + *value + "'");
            e.timestamp = *ts;
            have_timestamp = true;
            continue;
        }
        if (child.name != "string") continue;
        if (*key == "concept:name") {
            e.activity = *value;
        } else if (*key == "participant") {
            e.participant = *value;
        } else if (*key == "elemType") {
            elem_type = *value;
        } else if (*key == "fromParticipant") {
            from = *value;
        } else if (*key == "toParticipant") {
            to = *value;
        } else {
            if (!value->empty()) e.extra[*key] = *value;
        }
    }
    if (e.activity.empty())
        throw Error("MissingConceptName", where + " has no concept:name");
    if (!have_timestamp)
        throw Error("MissingTimestamp", where + " ('" + e.activity + "')");
    if (!from.empty() && !to.empty())
        throw Error("BothFromAndTo", where + " ('" + e.activity + "')");
    e.elem_type = is_message_elem_type(elem_type) ? ElemType::Message : ElemType::User;
    if (!from.empty()) {
        e.direction = Direction::Receive;
        e.counterpart = from;
    } else if (!to.empty()) {
        e.direction = Direction::Send;
        e.counterpart = to;
    }
    return e;
}

void append_escaped(std::string& out, std::string_view value) {
    for (char c : value) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\n': out += "&#10;"; break;
        case '\t': out += "&#9;"; break;
        case '\r': out += "&#13;"; break;
        default: out += c;
        }
    }
}

void append_attr(std::string& out, const char* indent, const char* elem,
                 std::string_view key, std::string_view value) {
    out += indent;
    out += '<';
    out += elem;
    out += " key=\"";
    append_escaped(out, key);
    out += "\" value=\"";
    append_escaped(out, value);
    out += "\"/>\n";
}

} // namespace

EventLog parse_xes(std::string_view document) {
    const XmlNode root = parse_xml(document);
    if (root.name != "log")
        throw Error("MalformedXml", "root element is <" + root.name + ">, expected <log>");

    std::vector<Trace> traces;
    std::size_t trace_no = 0;
    for (const XmlNode& tnode : root.children) {
        if (tnode.name != "trace") continue;
        ++trace_no;
        const std::string* case_id = nullptr;
        for (const XmlNode& child : tnode.children) {
            if (child.name != "string") continue;
            const std::string* key = child.attr("key");
            if (key && *key == "concept:name") {
                case_id = child.attr("value");
                break;
            }
        }
        if (!case_id || case_id->empty())
            throw Error("MissingConceptName",
                        "trace " + std::to_string(trace_no) + " has no concept:name");
        Trace trace;
        trace.case_id = *case_id;
        std::size_t event_no = 0;
        for (const XmlNode& child : tnode.children) {
            if (child.name != "event") continue;
            ++event_no;
            trace.events.push_back(parse_event(child, *case_id, trace_no, event_no));
        }
        traces.push_back(std::move(trace));
    }

    EventLog log = EventLog::from_traces(std::move(traces));
    require_valid(log);
    return log;
}

std::string write_xes(const EventLog& log) {
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<log xes.version=\"1849.2016\" xes.features=\"\">\n";
    out += " <extension name=\"Concept\" prefix=\"concept\" "
           "uri=\"http://www.xes-standard.org/concept.xesext\"/>\n";
    out += " <extension name=\"Time\" prefix=\"time\" "
           "uri=\"http://www.xes-standard.org/time.xesext\"/>\n";
    for (const Trace& t : log.traces) {
        out += " <trace>\n";
        append_attr(out, "  ", "string", "concept:name", t.case_id);
        for (const Event& e : t.events) {
            out += "  <event>\n";
            append_attr(out, "   ", "string", "concept:name", e.activity);
            append_attr(out, "   ", "date", "time:timestamp",
                        format_iso8601(e.timestamp));
            append_attr(out, "   ", "string", "participant", e.participant);
            append_attr(out, "   ", "string", "elemType", to_string(e.elem_type));
            if (e.direction == Direction::Receive)
                append_attr(out, "   ", "string", "fromParticipant", *e.counterpart);
            else if (e.direction == Direction::Send)
                append_attr(out, "   ", "string", "toParticipant", *e.counterpart);
            for (const auto& [key, value] : e.extra)
                append_attr(out, "   ", "string", key, value);
            out += "  </event>\n";
        }
        out += " </trace>\n";
    }
    out += "</log>\n";
    return out;
}

} // namespace collabpred
