#include "collabpred/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "collabpred/merge.hpp"

namespace collabpred {

std::int64_t Delay::sample(CaseRng& rng) const {
    switch (kind) {
    case Kind::Fixed:
        return std::max<std::int64_t>(1, a);
    case Kind::Uniform: {
        const std::uint64_t span = static_cast<std::uint64_t>(b - a) + 1;
        return std::max<std::int64_t>(
            1, a + static_cast<std::int64_t>(rng.below(span)));
    }
    case Kind::Exponential: {
        const double u = rng.unit();
        const double d = -static_cast<double>(a) * std::log1p(-u);
        return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(d)));
    }
    }
    return 1;
}

namespace {

// ---------------------------------------------------------------------------
// Static model checks
// ---------------------------------------------------------------------------

template <typename Fn>
void visit_steps(const StepList& steps, const Fn& fn) {
    for (const Step& s : steps) {
        fn(s);
        if (const auto* x = std::get_if<XorBranch>(&s.node))
            for (const StepList& b : x->branches) visit_steps(b, fn);
        else if (const auto* p = std::get_if<AndSplit>(&s.node))
            for (const StepList& b : p->branches) visit_steps(b, fn);
    }
}

struct ChannelKey {
    std::string label, from, to;
    auto operator<=>(const ChannelKey&) const = default;
};

// One XOR choice per occurrence; instantiation inlines the chosen branch and
// replaces step delays with sampled values.
struct PlanStep {
    enum class Kind { User, Send, Receive, Par };
    Kind kind = Kind::User;
    std::string name; // activity or message label
    std::string peer; // send: to, receive: from
    std::int64_t delay = 0;
    std::vector<std::vector<PlanStep>> branches;
};

class XorChooser {
public:
    virtual std::size_t choose(const XorBranch& x) = 0;
    virtual ~XorChooser() = default;
};

std::vector<PlanStep> instantiate(const StepList& steps, XorChooser& chooser,
                                  CaseRng* rng) {
    std::vector<PlanStep> plan;
    for (const Step& s : steps) {
        if (const auto* u = std::get_if<UserStep>(&s.node)) {
            plan.push_back({PlanStep::Kind::User, u->activity, "",
                            rng ? u->delay.sample(*rng) : 0, {}});
        } else if (const auto* snd = std::get_if<SendStep>(&s.node)) {
            plan.push_back({PlanStep::Kind::Send, snd->label, snd->to,
                            rng ? snd->delay.sample(*rng) : 0, {}});
        } else if (const auto* rcv = std::get_if<ReceiveStep>(&s.node)) {
            plan.push_back({PlanStep::Kind::Receive, rcv->label, rcv->from,
                            rng ? rcv->delay.sample(*rng) : 0, {}});
        } else if (const auto* x = std::get_if<XorBranch>(&s.node)) {
            const std::size_t pick = chooser.choose(*x);
            std::vector<PlanStep> inlined = instantiate(x->branches[pick], chooser, rng);
            for (PlanStep& p : inlined) plan.push_back(std::move(p));
        } else if (const auto* par = std::get_if<AndSplit>(&s.node)) {
            PlanStep p;
            p.kind = PlanStep::Kind::Par;
            for (const StepList& b : par->branches)
                p.branches.push_back(instantiate(b, chooser, rng));
            plan.push_back(std::move(p));
        }
    }
    return plan;
}

struct RtThread {
    const std::vector<PlanStep>* steps = nullptr;
    std::size_t idx = 0;
    std::int64_t clock = 0;
    RtThread* parent = nullptr;
    std::size_t pending_children = 0;
    bool waiting = false;
    bool done = false;
    std::string participant;
    std::size_t seq = 0;
};

struct CaseRun {
    std::deque<RtThread> threads; // deque: stable addresses across spawns
    std::map<ChannelKey, std::deque<std::int64_t>> channels;
    std::map<std::string, std::int64_t> participant_last;
    std::size_t next_seq = 0;

    RtThread& spawn(const std::vector<PlanStep>* steps, const std::string& participant,
                    std::int64_t clock, RtThread* parent) {
        threads.push_back({});
        RtThread& t = threads.back();
        t.steps = steps;
        t.participant = participant;
        t.clock = clock;
        t.parent = parent;
        t.seq = next_seq++;
        return t;
    }

    void finish(RtThread& t) {
        t.done = true;
        if (t.parent) {
            t.parent->clock = std::max(t.parent->clock, t.clock);
            if (--t.parent->pending_children == 0) {
                t.parent->waiting = false;
                ++t.parent->idx;
            }
        }
    }

    // Spawning and joining consume no time; run them to a fixed point so the
    // remaining heads are all user/send/receive steps. Indexed loop: spawn
    // grows the deque while we walk it.
    void settle() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < threads.size(); ++i) {
                RtThread& t = threads[i];
                if (t.done || t.waiting) continue;
                if (t.idx >= t.steps->size()) {
                    finish(t);
                    changed = true;
                    continue;
                }
                const PlanStep& head = (*t.steps)[t.idx];
                if (head.kind == PlanStep::Kind::Par) {
                    t.waiting = true;
                    t.pending_children = head.branches.size();
                    for (const auto& b : head.branches)
                        spawn(&b, t.participant, t.clock, &t);
                    if (head.branches.empty()) {
                        t.waiting = false;
                        ++t.idx;
                    }
                    changed = true;
                }
            }
        }
    }

    bool all_done() const {
        for (const RtThread& t : threads)
            if (!t.done) return false;
        return true;
    }
};

} // namespace

std::optional<Error> check_model(const CollabModel& model) {
    if (model.participants.empty())
        return Error("ModelParseError", "model declares no participant");
    for (const std::string& p : model.participants)
        if (!model.machines.contains(p))
            return Error("ModelParseError", "participant '" + p + "' has no machine");
    for (const auto& [p, steps] : model.machines)
        if (std::find(model.participants.begin(), model.participants.end(), p) ==
            model.participants.end())
            return Error("UnknownParticipant", "machine for undeclared '" + p + "'");

    std::map<ChannelKey, int> sends, receives;
    std::optional<Error> found;
    for (const std::string& p : model.participants) {
        visit_steps(model.machines.at(p), [&](const Step& s) {
            if (found) return;
            if (const auto* snd = std::get_if<SendStep>(&s.node)) {
                if (snd->to == p)
                    found = Error("SelfMessage", "'" + p + "' sends '" + snd->label +
                                                     "' to itself");
                else if (std::find(model.participants.begin(), model.participants.end(),
                                   snd->to) == model.participants.end())
                    found = Error("UnknownParticipant",
                                  "send '" + snd->label + "' to undeclared '" +
                                      snd->to + "'");
                else
                    ++sends[{snd->label, p, snd->to}];
            } else if (const auto* rcv = std::get_if<ReceiveStep>(&s.node)) {
                if (rcv->from == p)
                    found = Error("SelfMessage", "'" + p + "' receives '" + rcv->label +
                                                     "' from itself");
                else if (std::find(model.participants.begin(), model.participants.end(),
                                   rcv->from) == model.participants.end())
                    found = Error("UnknownParticipant",
                                  "receive '" + rcv->label + "' from undeclared '" +
                                      rcv->from + "'");
                else
                    ++receives[{rcv->label, rcv->from, p}];
            } else if (const auto* x = std::get_if<XorBranch>(&s.node)) {
                if (x->branches.empty() || x->branches.size() != x->probabilities.size()) {
                    found = Error("ModelParseError", "malformed xor block");
                    return;
                }
                double sum = 0;
                for (double prob : x->probabilities) {
                    if (prob < 0) found = Error("XorProbabilitySum", "negative probability");
                    sum += prob;
                }
                if (std::abs(sum - 1.0) > 1e-9)
                    found = Error("XorProbabilitySum",
                                  "probabilities sum to " + std::to_string(sum));
            }
        });
        if (found) return found;
    }
    for (const auto& [key, n] : sends) {
        auto it = receives.find(key);
        if (it == receives.end())
            return Error("UnmatchedSend", "message '" + key.label + "' from '" +
                                              key.from + "' to '" + key.to +
                                              "' has no receive");
        if (n != 1 || it->second != 1)
            return Error("AmbiguousMessage", "message '" + key.label + "' from '" +
                                                 key.from + "' to '" + key.to +
                                                 "' is not uniquely matched");
    }
    for (const auto& [key, n] : receives)
        if (!sends.contains(key))
            return Error("UnmatchedReceive", "message '" + key.label + "' from '" +
                                                 key.from + "' to '" + key.to +
                                                 "' has no send");

    // Deadlock freedom: greedy saturation per XOR combination. Sends never
    // block, so reachability of each step is independent of execution order.
    std::vector<const XorBranch*> xors;
    for (const std::string& p : model.participants)
        visit_steps(model.machines.at(p), [&](const Step& s) {
            if (const auto* x = std::get_if<XorBranch>(&s.node)) xors.push_back(x);
        });

    std::vector<std::size_t> choice(xors.size(), 0);
    while (true) {
        struct FixedChooser : XorChooser {
            const std::vector<const XorBranch*>* xors;
            const std::vector<std::size_t>* choice;
            std::size_t choose(const XorBranch& x) override {
                for (std::size_t i = 0; i < xors->size(); ++i)
                    if ((*xors)[i] == &x) return (*choice)[i];
                return 0;
            }
        } chooser;
        chooser.xors = &xors;
        chooser.choice = &choice;

        std::vector<std::vector<PlanStep>> plans;
        plans.reserve(model.participants.size());
        for (const std::string& p : model.participants)
            plans.push_back(instantiate(model.machines.at(p), chooser, nullptr));

        CaseRun run;
        for (std::size_t i = 0; i < model.participants.size(); ++i)
            run.spawn(&plans[i], model.participants[i], 0, nullptr);
        bool progress = true;
        while (progress) {
            progress = false;
            run.settle();
            for (RtThread& t : run.threads) {
                if (t.done || t.waiting || t.idx >= t.steps->size()) continue;
                const PlanStep& head = (*t.steps)[t.idx];
                if (head.kind == PlanStep::Kind::Receive) {
                    auto it = run.channels.find({head.name, head.peer, t.participant});
                    if (it == run.channels.end() || it->second.empty()) continue;
                    it->second.pop_front();
                } else if (head.kind == PlanStep::Kind::Send) {
                    run.channels[{head.name, t.participant, head.peer}].push_back(0);
                } else if (head.kind == PlanStep::Kind::Par) {
                    continue; // settle() handles it
                }
                ++t.idx;
                progress = true;
            }
        }
        run.settle();
        if (!run.all_done()) {
            std::string stuck;
            for (const RtThread& t : run.threads)
                if (!t.done && !t.waiting && t.idx < t.steps->size()) {
                    stuck = "participant '" + t.participant + "' blocked on '" +
                            (*t.steps)[t.idx].name + "'";
                    break;
                }
            return Error("ModelDeadlock", stuck.empty() ? "join never completes" : stuck);
        }

        // Next XOR combination (mixed-radix increment).
        std::size_t pos = 0;
        while (pos < xors.size()) {
            if (++choice[pos] < xors[pos]->branches.size()) break;
            choice[pos] = 0;
            ++pos;
        }
        if (pos == xors.size()) break;
    }
    return std::nullopt;
}

EventLog simulate(const CollabModel& model, const SimConfig& config) {
    if (auto err = check_model(model)) throw *err;

    int width = 1;
    for (std::int64_t v = config.n_cases; v >= 10; v /= 10) ++width;

    std::vector<Trace> traces;
    traces.reserve(static_cast<std::size_t>(std::max<std::int64_t>(0, config.n_cases)));
    std::int64_t case_offset = 0;
    for (std::int64_t case_index = 0; case_index < config.n_cases; ++case_index) {
        CaseRng rng(config.seed, static_cast<std::uint64_t>(case_index));
        case_offset += config.inter_arrival.sample(rng);

        struct SamplingChooser : XorChooser {
            CaseRng* rng;
            std::size_t choose(const XorBranch& x) override {
                const double u = rng->unit();
                double cum = 0;
                for (std::size_t i = 0; i < x.probabilities.size(); ++i) {
                    cum += x.probabilities[i];
                    if (u < cum) return i;
                }
                return x.probabilities.size() - 1;
            }
        } chooser;
        chooser.rng = &rng;

        std::vector<std::vector<PlanStep>> plans;
        plans.reserve(model.participants.size());
        for (const std::string& p : model.participants)
            plans.push_back(instantiate(model.machines.at(p), chooser, &rng));

        std::string case_id = std::to_string(case_index + 1);
        case_id.insert(0, static_cast<std::size_t>(width) - case_id.size(), '0');
        case_id.insert(0, "case_");

        Trace trace;
        trace.case_id = case_id;

        CaseRun run;
        for (std::size_t i = 0; i < model.participants.size(); ++i)
            run.spawn(&plans[i], model.participants[i], 0, nullptr);

        while (true) {
            run.settle();
            if (run.all_done()) break;

            RtThread* best = nullptr;
            std::int64_t best_time = 0;
            for (RtThread& t : run.threads) {
                if (t.done || t.waiting || t.idx >= t.steps->size()) continue;
                const PlanStep& head = (*t.steps)[t.idx];
                std::int64_t base = t.clock;
                if (head.kind == PlanStep::Kind::Receive) {
                    auto it = run.channels.find({head.name, head.peer, t.participant});
                    if (it == run.channels.end() || it->second.empty()) continue;
                    base = std::max(base, it->second.front());
                }
                std::int64_t when = base + head.delay;
                auto last = run.participant_last.find(t.participant);
                if (last != run.participant_last.end())
                    when = std::max(when, last->second + 1);
                if (!best || when < best_time ||
                    (when == best_time &&
                     (t.participant < best->participant ||
                      (t.participant == best->participant && t.seq < best->seq)))) {
                    best = &t;
                    best_time = when;
                }
            }
            if (!best) throw Error("ModelDeadlock", "no runnable step at runtime");

            const PlanStep& head = (*best->steps)[best->idx];
            Event e;
            e.case_id = case_id;
            e.participant = best->participant;
            e.timestamp = timestamp_from_ms(ms_since_epoch(config.start) + case_offset +
                                            best_time);
            switch (head.kind) {
            case PlanStep::Kind::User:
                e.activity = head.name;
                break;
            case PlanStep::Kind::Send:
                e.activity = "Send " + head.name;
                e.elem_type = ElemType::Message;
                e.direction = Direction::Send;
                e.counterpart = head.peer;
                run.channels[{head.name, best->participant, head.peer}].push_back(
                    best_time);
                break;
            case PlanStep::Kind::Receive:
                e.activity = "Receive " + head.name;
                e.elem_type = ElemType::Message;
                e.direction = Direction::Receive;
                e.counterpart = head.peer;
                run.channels[{head.name, head.peer, best->participant}].pop_front();
                break;
            case PlanStep::Kind::Par:
                break; // unreachable after settle()
            }
            trace.events.push_back(std::move(e));
            best->clock = best_time;
            run.participant_last[best->participant] = best_time;
            ++best->idx;
        }

        traces.push_back(std::move(trace));
    }

    EventLog log = normalize_log(EventLog::from_traces(std::move(traces)));
    require_valid(log);
    return log;
}

} // namespace collabpred
