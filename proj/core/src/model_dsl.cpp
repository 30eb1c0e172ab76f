#include <cstdlib>

#include "collabpred/simulate.hpp"

namespace collabpred {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw Error("ModelParseError", "line " + std::to_string(line) + ": " + what);
}

std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view raw = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++number;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            const char c = raw[i];
            if (c == '#') break;
            if (c == ' ' || c == '\t' || c == '\r') {
                ++i;
                continue;
            }
            if (c == '"') {
                const std::size_t close = raw.find('"', i + 1);
                if (close == std::string_view::npos) fail(number, "unterminated quote");
                line.tokens.emplace_back(raw.substr(i + 1, close - i - 1));
                i = close + 1;
                continue;
            }
            std::size_t end = i;
            while (end < raw.size() && raw[end] != ' ' && raw[end] != '\t' &&
                   raw[end] != '#' && raw[end] != '\r')
                ++end;
            line.tokens.emplace_back(raw.substr(i, end - i));
            i = end;
        }
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

std::int64_t parse_duration_ms(const Line& line, const std::string& token) {
    std::size_t digits = 0;
    while (digits < token.size() &&
           token[digits] >= '0' && token[digits] <= '9')
        ++digits;
    if (digits == 0) fail(line.number, "expected duration, got '" + token + "'");
    const std::int64_t value = std::strtoll(token.substr(0, digits).c_str(), nullptr, 10);
    const std::string suffix = token.substr(digits);
    if (suffix.empty() || suffix == "ms") return value;
    if (suffix == "s") return value * 1000;
    if (suffix == "m") return value * 60000;
    if (suffix == "h") return value * 3600000;
    fail(line.number, "unknown duration suffix '" + suffix + "'");
}

Delay parse_delay(const Line& line, std::size_t at) {
    const auto& t = line.tokens;
    if (at >= t.size() || t[at] != "delay")
        fail(line.number, "expected 'delay <distribution>'");
    ++at;
    if (at >= t.size()) fail(line.number, "missing distribution");
    Delay d;
    if (t[at] == "fixed") {
        if (at + 1 >= t.size()) fail(line.number, "fixed needs one duration");
        d.kind = Delay::Kind::Fixed;
        d.a = parse_duration_ms(line, t[at + 1]);
        if (at + 2 != t.size()) fail(line.number, "trailing tokens after delay");
    } else if (t[at] == "uniform") {
        if (at + 2 >= t.size()) fail(line.number, "uniform needs two durations");
        d.kind = Delay::Kind::Uniform;
        d.a = parse_duration_ms(line, t[at + 1]);
        d.b = parse_duration_ms(line, t[at + 2]);
        if (d.b < d.a) fail(line.number, "uniform upper bound below lower bound");
        if (at + 3 != t.size()) fail(line.number, "trailing tokens after delay");
    } else if (t[at] == "exp") {
        if (at + 1 >= t.size()) fail(line.number, "exp needs a mean duration");
        d.kind = Delay::Kind::Exponential;
        d.a = parse_duration_ms(line, t[at + 1]);
        if (at + 2 != t.size()) fail(line.number, "trailing tokens after delay");
    } else {
        fail(line.number, "unknown distribution '" + t[at] + "'");
    }
    return d;
}

// Parses steps until an unconsumed "end" or "branch" line.
StepList parse_steps(const std::vector<Line>& lines, std::size_t& i) {
    StepList steps;
    while (i < lines.size()) {
        const Line& line = lines[i];
        const std::string& head = line.tokens[0];
        if (head == "end" || head == "branch") return steps;
        if (head == "user") {
            if (line.tokens.size() < 2) fail(line.number, "user needs an activity");
            UserStep s{line.tokens[1], parse_delay(line, 2)};
            steps.push_back({std::move(s)});
            ++i;
        } else if (head == "send" || head == "receive") {
            if (line.tokens.size() < 4 ||
                line.tokens[2] != (head == "send" ? "to" : "from"))
                fail(line.number,
                     head + " needs: " + head + " \"label\" " +
                         (head == "send" ? "to" : "from") + " <participant> delay ...");
            if (head == "send") {
                SendStep s{line.tokens[1], line.tokens[3], parse_delay(line, 4)};
                steps.push_back({std::move(s)});
            } else {
                ReceiveStep s{line.tokens[1], line.tokens[3], parse_delay(line, 4)};
                steps.push_back({std::move(s)});
            }
            ++i;
        } else if (head == "xor" || head == "par") {
            const bool is_xor = head == "xor";
            if (line.tokens.size() != 1) fail(line.number, head + " takes no arguments");
            ++i;
            XorBranch xnode;
            AndSplit pnode;
            bool any_branch = false;
            while (i < lines.size() && lines[i].tokens[0] == "branch") {
                const Line& branch_line = lines[i];
                if (is_xor) {
                    if (branch_line.tokens.size() != 2)
                        fail(branch_line.number, "xor branch needs a probability");
                    char* endp = nullptr;
                    const double p = std::strtod(branch_line.tokens[1].c_str(), &endp);
                    if (endp == branch_line.tokens[1].c_str() || *endp != '\0')
                        fail(branch_line.number, "bad probability '" +
                                                     branch_line.tokens[1] + "'");
                    xnode.probabilities.push_back(p);
                } else if (branch_line.tokens.size() != 1) {
                    fail(branch_line.number, "par branch takes no arguments");
                }
                ++i;
                StepList body = parse_steps(lines, i);
                if (is_xor)
                    xnode.branches.push_back(std::move(body));
                else
                    pnode.branches.push_back(std::move(body));
                any_branch = true;
            }
            if (!any_branch) fail(line.number, head + " has no branch");
            if (i >= lines.size() || lines[i].tokens[0] != "end")
                fail(line.number, "unterminated " + head + " block");
            ++i; // consume "end"
            if (is_xor)
                steps.push_back({std::move(xnode)});
            else
                steps.push_back({std::move(pnode)});
        } else {
            fail(line.number, "unknown step '" + head + "'");
        }
    }
    return steps;
}

} // namespace

CollabModel parse_collab_model(std::string_view text) {
    const std::vector<Line> lines = tokenize(text);
    CollabModel model;
    std::size_t i = 0;
    while (i < lines.size()) {
        const Line& line = lines[i];
        const std::string& head = line.tokens[0];
        if (head == "model") {
            if (line.tokens.size() != 2) fail(line.number, "model needs a name");
            if (!model.name.empty()) fail(line.number, "duplicate model directive");
            model.name = line.tokens[1];
            ++i;
        } else if (head == "participant") {
            if (line.tokens.size() != 2) fail(line.number, "participant needs a name");
            model.participants.push_back(line.tokens[1]);
            ++i;
        } else if (head == "machine") {
            if (line.tokens.size() != 2) fail(line.number, "machine needs a name");
            const std::string name = line.tokens[1];
            if (model.machines.contains(name))
                fail(line.number, "duplicate machine '" + name + "'");
            ++i;
            StepList steps = parse_steps(lines, i);
            if (i >= lines.size() || lines[i].tokens[0] != "end")
                fail(line.number, "unterminated machine block");
            ++i;
            model.machines[name] = std::move(steps);
        } else {
            fail(line.number, "unknown directive '" + head + "'");
        }
    }
    if (model.name.empty())
        throw Error("ModelParseError", "missing model directive");
    if (auto err = check_model(model)) throw *err;
    return model;
}

} // namespace collabpred
