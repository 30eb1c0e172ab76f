#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "collabpred/event.hpp"
#include "collabpred/rng.hpp"

namespace collabpred {

/// Step/channel delay in milliseconds. Samples are clamped to >= 1 ms so
/// per-participant timestamps strictly increase within a case.
struct Delay {
    enum class Kind { Fixed, Uniform, Exponential };
    Kind kind = Kind::Fixed;
    std::int64_t a = 1; // Fixed: value; Uniform: lower; Exponential: mean
    std::int64_t b = 1; // Uniform: upper

    std::int64_t sample(CaseRng& rng) const;
};

struct Step;
using StepList = std::vector<Step>;

struct UserStep {
    std::string activity;
    Delay delay;
};

/// Emits "Send <label>" at the sender; the matching ReceiveStep emits
/// "Receive <label>" at the receiver once the message has arrived.
struct SendStep {
    std::string label;
    std::string to;
    Delay delay;
};

struct ReceiveStep {
    std::string label;
    std::string from;
    Delay delay; // channel delay, counted from max(ready, send time)
};

struct XorBranch {
    std::vector<double> probabilities; // sum to 1 within 1e-9
    std::vector<StepList> branches;
};

struct AndSplit {
    std::vector<StepList> branches; // implicit join at the end of the block
};

struct Step {
    std::variant<UserStep, SendStep, ReceiveStep, XorBranch, AndSplit> node;
};

/// A collaboration: one sequential state machine per participant,
/// synchronized by uniquely matched message channels.
struct CollabModel {
    std::string name;
    std::vector<std::string> participants; // declaration order
    std::map<std::string, StepList> machines;
};

/// Structural validation: declared machines, XOR probability sums, unique
/// send/receive matching, and deadlock freedom checked by enumerating every
/// XOR branch combination.
std::optional<Error> check_model(const CollabModel& model);

/// Parses the declarative model text (see the committed .collab files for
/// the format) and runs check_model. Throws Error("ModelParseError", ...)
/// plus the check_model errors.
CollabModel parse_collab_model(std::string_view text);

/// Names: "buyer_reseller", "healthcare". Throws Error("UnknownModel").
CollabModel builtin_model(const std::string& name);
const std::string& builtin_model_text(const std::string& name);
std::vector<std::string> builtin_model_names();

struct SimConfig {
    std::int64_t n_cases = 0;
    std::uint64_t seed = 0;
    Delay inter_arrival{Delay::Kind::Uniform, 1800000, 7200000}; // 30 min .. 2 h
    Timestamp start = timestamp_from_ms(1704067200000);          // 2024-01-01 UTC
};

/// Seeded generation; fully determined by (model, config). The returned log
/// is valid and tie-policy normalized, one trace per case, case ids
/// zero-padded so trace order equals case order.
EventLog simulate(const CollabModel& model, const SimConfig& config);

} // namespace collabpred
