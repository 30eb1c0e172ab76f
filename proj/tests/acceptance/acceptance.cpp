// Acceptance suite: every release criterion as one pass/fail line, runnable
// in well under a minute. Exit code equals the number of failed criteria.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include <unistd.h>

#include "collabpred/csv.hpp"
#include "collabpred/io.hpp"
#include "collabpred/merge.hpp"
#include "collabpred/metrics.hpp"
#include "collabpred/model.hpp"
#include "collabpred/simulate.hpp"
#include "collabpred/xes.hpp"

#include "../support/oracles.hpp"

using namespace collabpred;
namespace fs = std::filesystem;

namespace {

struct CheckFailure {
    std::string detail;
};

void expect(bool ok, const std::string& detail) {
    if (!ok) throw CheckFailure{detail};
}

EventLog sim(const std::string& name, std::int64_t cases, std::uint64_t seed) {
    SimConfig cfg;
    cfg.n_cases = cases;
    cfg.seed = seed;
    return simulate(builtin_model(name), cfg);
}

EventLog first_traces_with_at_most(const EventLog& log, std::size_t max_events) {
    std::vector<Trace> traces;
    std::size_t total = 0;
    for (const Trace& t : log.traces) {
        if (total + t.events.size() > max_events) break;
        total += t.events.size();
        traces.push_back(t);
    }
    return EventLog::from_traces(std::move(traces));
}

// --- criterion 1 -----------------------------------------------------------

std::string reproduction_send_results() {
    const EventLog train_log = sim("healthcare", 1000, 42);
    const PredictionTask task = make_task("next-message-send", {"Laboratory", "", true});
    const EncoderConfig enc{3, false, false};
    const FrequencyModel model = train(generate_dataset(train_log, task, enc));

    std::size_t prefixes = 0, correct = 0;
    const EventLog fresh = sim("healthcare", 200, 20260811);
    for (const EventLog* log : {&train_log, &fresh}) {
        const EventLog viewed = apply_view(*log, trace_view(task));
        for (const Trace& t : viewed.traces)
            for (std::size_t k = 1; k <= t.events.size(); ++k) {
                if (t.events[k - 1].activity != "Receive blood sample") continue;
                ++prefixes;
                const PredictionResult r =
                    predict_state(model, encode_prefix(t, k, enc));
                if (r.label && *r.label == "Send results") ++correct;
            }
    }
    expect(prefixes > 0, "no qualifying prefix found");
    expect(correct == prefixes,
           std::to_string(correct) + "/" + std::to_string(prefixes) + " matched");
    return "all " + std::to_string(prefixes) +
           " prefixes at 'Receive blood sample' predict 'Send results'";
}

// --- criterion 2 -----------------------------------------------------------

std::string reduction_coherence() {
    std::size_t pairs = 0;
    for (const std::string& name : builtin_model_names()) {
        const EventLog log = sim(name, 100, 1);
        for (const std::string& p : log.participants) {
            const PredictionTask participant_task =
                make_task("next-activity-participant", {p, "", false});
            const std::string a =
                write_model(train(generate_dataset(log, participant_task,
                                                   {3, false, false})));
            const EventLog filtered = apply_view(
                log, ViewSpec{ViewScope::Participant, p, ViewContent::AllEvents,
                              DirectionFilter::Any});
            const PredictionTask process_task = make_task("next-activity-process", {});
            const std::string b = write_model(
                train(generate_dataset(filtered, process_task, {3, false, false})));
            expect(a == b, name + "/" + p + ": serialized models differ");
            ++pairs;
        }
    }
    return std::to_string(pairs) + " participant/process model pairs byte-identical";
}

// --- criterion 3 -----------------------------------------------------------

std::string merge_split_roundtrip() {
    std::size_t checked = 0;
    for (const std::string& name : builtin_model_names()) {
        for (std::int64_t n : {1, 10, 100}) {
            const EventLog log = sim(name, n, 5);
            std::vector<EventLog> parts;
            for (const auto& [p, part] : split_log(log)) parts.push_back(part);
            expect(merge_logs(parts) == log,
                   name + " n=" + std::to_string(n) + ": round-trip differs");
            ++checked;
        }
    }
    return std::to_string(checked) + " merge(split(log)) identities hold exactly";
}

// --- criterion 4 -----------------------------------------------------------

bool matches(const Target& target, const std::optional<std::string>& oracle_label) {
    if (is_undefined(target)) return !oracle_label.has_value();
    if (!oracle_label) return false;
    return target == Target(*oracle_label);
}

std::string labeling_oracle_equivalence() {
    const EventLog log = first_traces_with_at_most(sim("healthcare", 30, 99), 200);
    expect(event_count(log) >= 150, "simulated sample unexpectedly small");

    std::vector<PredictionTask> tasks;
    for (const std::string& p : log.participants)
        tasks.push_back(make_task("outcome-participant", {p, "", false}));
    tasks.push_back(make_task("outcome-participant", {"Courier-absent", "", false}));
    std::size_t taken = 0;
    for (const std::string& m : log.message_labels) {
        tasks.push_back(make_task("outcome-message-send", {"", m, false}));
        tasks.push_back(make_task("outcome-message-receive", {"", m, false}));
        if (++taken == 3) break;
    }
    for (const char* id : {"remaining-messages-process", "total-messages-process",
                           "remaining-time-process", "total-duration-process",
                           "time-to-next-message-send", "time-to-next-message-receive",
                           "next-activity-process", "next-participant",
                           "next-message-send", "next-message-receive",
                           "next-message-counterpart-send",
                           "next-message-counterpart-receive"})
        tasks.push_back(make_task(id, {}));
    for (const std::string& p : log.participants)
        for (const char* id :
             {"remaining-messages-participant", "total-messages-participant",
              "remaining-time-participant", "total-duration-participant",
              "next-activity-participant"})
            tasks.push_back(make_task(id, {p, "", false}));

    std::size_t comparisons = 0;
    using namespace collabpred::testing;
    for (const PredictionTask& task : tasks) {
        const EventLog viewed = apply_view(log, trace_view(task));
        const DirectionFilter d = task.view.direction;
        for (const Trace& t : viewed.traces) {
            for (std::size_t k = 1; k <= t.events.size(); ++k) {
                const Target got = label(task, t, k);
                bool ok = true;
                switch (task.kind) {
                case TaskKind::ParticipantWillAppear:
                    ok = got == Target(oracle_participant_will_appear(
                             t, task.target_participant));
                    break;
                case TaskKind::MessageWillOccur:
                    ok = got ==
                         Target(oracle_message_will_occur(t, task.target_message, d));
                    break;
                case TaskKind::RemainingMessages:
                    ok = got == Target(oracle_remaining_messages(t, k, d));
                    break;
                case TaskKind::TotalMessages:
                    ok = got == Target(oracle_total_messages(t, d));
                    break;
                case TaskKind::RemainingTime:
                    ok = got == Target(Duration(oracle_remaining_time_ms(t, k)));
                    break;
                case TaskKind::TotalDuration:
                    ok = got == Target(Duration(oracle_total_duration_ms(t)));
                    break;
                case TaskKind::TimeToNextMessage: {
                    const auto oracle = oracle_time_to_next_message_ms(t, k, d);
                    ok = oracle ? got == Target(Duration(*oracle)) : is_undefined(got);
                    break;
                }
                case TaskKind::NextActivity:
                    ok = matches(got, oracle_next_activity(t, k));
                    break;
                case TaskKind::NextParticipant:
                    ok = matches(got, oracle_next_participant(t, k));
                    break;
                case TaskKind::NextMessageLabel:
                    ok = matches(got, oracle_next_message(t, k, d));
                    break;
                case TaskKind::NextMessageCounterpart:
                    ok = matches(got, oracle_next_message_counterpart(t, k, d));
                    break;
                }
                expect(ok, std::string(to_string(task.kind)) + " at " + t.case_id +
                               "/k=" + std::to_string(k));
                ++comparisons;
            }
        }
    }
    return std::to_string(comparisons) + " labeler outputs equal the naive oracle";
}

// --- criterion 5 -----------------------------------------------------------

std::string predictor_oracle_equivalence() {
    std::size_t categorical = 0, numeric = 0;
    for (const std::string& name : builtin_model_names()) {
        const EventLog log = first_traces_with_at_most(sim(name, 30, 17), 200);
        const EncoderConfig enc{3, false, false};

        const Dataset cat =
            generate_dataset(log, make_task("next-activity-process", {}), enc);
        const FrequencyModel cat_model = train(cat);
        std::set<StateKey> states;
        for (const DatasetRow& row : cat.rows) states.insert(row.state);
        for (const StateKey& s : states) {
            expect(*predict_state(cat_model, s).label ==
                       testing::oracle_mode(cat.rows, s),
                   name + ": categorical argmax deviates from the empirical mode");
            ++categorical;
        }

        for (const char* id : {"remaining-time-process", "remaining-messages-process"}) {
            const Dataset num = generate_dataset(log, make_task(id, {}), enc);
            const FrequencyModel num_model = train(num);
            std::set<StateKey> num_states;
            for (const DatasetRow& row : num.rows) num_states.insert(row.state);
            for (const StateKey& s : num_states) {
                const double expected = testing::oracle_mean(num.rows, s);
                const double got = predict_state(num_model, s).estimate;
                expect(std::abs(got - expected) <=
                           1e-9 * std::max(1.0, std::abs(expected)),
                       name + ": numeric estimate off the brute-force mean");
                ++numeric;
            }
        }
    }
    return std::to_string(categorical) + " categorical and " +
           std::to_string(numeric) + " numeric states match brute force";
}

// --- criterion 6 -----------------------------------------------------------

const char* kXorVariant = R"(
model buyer_reseller_xor
participant Buyer
participant Reseller

machine Buyer
  user "place order" delay uniform 1m 10m
  send "m1" to Reseller delay uniform 1m 5m
  par
    branch
      receive "m2" from Reseller delay uniform 10m 120m
    branch
      receive "m3" from Reseller delay uniform 10m 120m
  end
  xor
    branch 0.7
      user "pay by bank transfer" delay uniform 5m 30m
    branch 0.3
      user "request payment extension" delay uniform 5m 30m
  end
  send "m4" to Reseller delay uniform 5m 60m
end

machine Reseller
  receive "m1" from Buyer delay uniform 1m 30m
  par
    branch
      user "prepare shipment" delay uniform 30m 240m
      send "m2" to Buyer delay uniform 5m 30m
    branch
      user "issue invoice" delay uniform 10m 60m
      send "m3" to Buyer delay uniform 5m 30m
  end
  receive "m4" from Buyer delay uniform 1m 30m
end
)";

std::string stochastic_sanity() {
    const CollabModel model = parse_collab_model(kXorVariant);
    SimConfig cfg;
    cfg.n_cases = 12000;
    cfg.seed = 7;
    const EventLog log = simulate(model, cfg);
    std::vector<Trace> train_traces(log.traces.begin(), log.traces.begin() + 10000);
    std::vector<Trace> test_traces(log.traces.begin() + 10000, log.traces.end());
    const EventLog train_log = EventLog::from_traces(std::move(train_traces));
    const EventLog test_log = EventLog::from_traces(std::move(test_traces));

    const PredictionTask task =
        make_task("next-activity-participant", {"Buyer", "", false});
    const EncoderConfig enc{3, false, false};
    const FrequencyModel trained = train(generate_dataset(train_log, task, enc));

    const Dataset test_rows = generate_dataset(test_log, task, enc);
    std::size_t at_branch = 0, correct = 0;
    for (const DatasetRow& row : test_rows.rows) {
        const std::string truth = target_to_string(row.target);
        if (truth != "pay by bank transfer" && truth != "request payment extension")
            continue;
        ++at_branch;
        if (*predict_state(trained, row.state).label == truth) ++correct;
    }
    expect(at_branch == 2000,
           "expected one branch decision per test case, saw " +
               std::to_string(at_branch));
    const double accuracy = static_cast<double>(correct) / at_branch;
    std::ostringstream msg;
    msg << "branch-point accuracy " << accuracy << " within [0.65, 0.75]";
    expect(accuracy >= 0.65 && accuracy <= 0.75, msg.str());
    return msg.str();
}

// --- criterion 7 -----------------------------------------------------------

std::string simulate_determinism() {
    const fs::path dir =
        fs::temp_directory_path() / ("collabpred_acceptance_" +
                                     std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string a = (dir / "a.csv").string();
    const std::string b = (dir / "b.csv").string();
    const std::string cmd = std::string(COLLABPRED_CLI_PATH) +
                            " simulate --model healthcare --cases 5 --seed 42 --out ";
    expect(std::system((cmd + a).c_str()) == 0, "first simulate run failed");
    expect(std::system((cmd + b).c_str()) == 0, "second simulate run failed");
    const std::string bytes_a = read_file(a);
    const std::string bytes_b = read_file(b);
    fs::remove_all(dir);
    expect(bytes_a == bytes_b, "two runs differ");
    const std::string golden =
        read_file(std::string(COLLABPRED_DATA_DIR) + "/healthcare_n5_seed42.csv");
    expect(bytes_a == golden, "output differs from the frozen golden file");
    return "byte-identical across runs and equal to the frozen golden file";
}

// --- criterion 8 -----------------------------------------------------------

std::string format_roundtrips() {
    std::size_t checked = 0;
    for (const std::string& name : builtin_model_names()) {
        const EventLog log = sim(name, 25, 3);
        expect(parse_xes(write_xes(log)) == log, name + ": XES round-trip differs");
        expect(parse_csv(write_csv(log, ColumnMapping{}), ColumnMapping{}) == log,
               name + ": CSV round-trip differs");
        checked += 2;
    }
    return std::to_string(checked) + " serialization round-trips are identities";
}

// --- criterion 9 -----------------------------------------------------------

const char* kPingPong = R"(
model pingpong
participant Alice
participant Bob

machine Alice
  user "prepare request" delay fixed 1m
  send "ping" to Bob delay fixed 1m
  receive "pong" from Bob delay fixed 1m
  user "archive response" delay fixed 1m
end

machine Bob
  receive "ping" from Alice delay fixed 2m
  user "process request" delay fixed 5m
  send "pong" to Alice delay fixed 1m
end
)";

std::string branch_free_determinism() {
    const CollabModel model = parse_collab_model(kPingPong);
    SimConfig train_cfg;
    train_cfg.n_cases = 100;
    train_cfg.seed = 11;
    SimConfig test_cfg;
    test_cfg.n_cases = 50;
    test_cfg.seed = 12;
    const EventLog train_log = simulate(model, train_cfg);
    const EventLog test_log = simulate(model, test_cfg);
    const EncoderConfig enc{3, false, false};

    const Metrics next_activity = evaluate(
        train(generate_dataset(train_log, make_task("next-activity-process", {}), enc)),
        test_log);
    expect(next_activity.accuracy == 1.0, "next-activity accuracy below 1.0");

    const Metrics next_message = evaluate(
        train(generate_dataset(train_log, make_task("next-message-send", {"", "", true}),
                               enc)),
        test_log);
    expect(next_message.accuracy == 1.0, "next-message accuracy below 1.0");

    const Metrics remaining = evaluate(
        train(generate_dataset(train_log, make_task("remaining-messages-process", {}),
                               enc)),
        test_log);
    expect(remaining.mae == 0.0, "remaining-messages MAE not zero");
    return "accuracy 1.0 and MAE 0 on held-out branch-free data";
}

} // namespace

int main() {
    struct Criterion {
        int number;
        std::string title;
        std::function<std::string()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "healthcare reproduction: 'Receive blood sample' -> 'Send results'",
         reproduction_send_results},
        {2, "reduction coherence: participant scope == process scope on filtered log",
         reduction_coherence},
        {3, "merge/split round-trip on simulated logs", merge_split_roundtrip},
        {4, "labeling functions equal the naive oracle", labeling_oracle_equivalence},
        {5, "predictor equals brute-force mode/mean", predictor_oracle_equivalence},
        {6, "stochastic sanity at a 0.7/0.3 branch", stochastic_sanity},
        {7, "simulate determinism and frozen golden file", simulate_determinism},
        {8, "XES and CSV round-trips are identities", format_roundtrips},
        {9, "branch-free models evaluate perfectly", branch_free_determinism},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        try {
            const std::string detail = c.run();
            std::cout << "PASS  " << c.number << "  " << c.title << " (" << detail
                      << ")\n";
        } catch (const CheckFailure& f) {
            ++failures;
            std::cout << "FAIL  " << c.number << "  " << c.title << ": " << f.detail
                      << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "FAIL  " << c.number << "  " << c.title
                      << ": unexpected error: " << e.what() << "\n";
        }
    }
    if (failures == 0)
        std::cout << "All " << criteria.size() << " acceptance criteria passed.\n";
    else
        std::cout << failures << " acceptance criterion(s) failed.\n";
    return failures;
}
