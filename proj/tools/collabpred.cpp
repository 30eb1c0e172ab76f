// collabpred: simulate, merge, view, encode, train, predict and evaluate
// collaborative process logs from one binary.

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <iostream>
#include <string>

#include "collabpred/csv.hpp"
#include "collabpred/dataset.hpp"
#include "collabpred/io.hpp"
#include "collabpred/merge.hpp"
#include "collabpred/metrics.hpp"
#include "collabpred/model.hpp"
#include "collabpred/simulate.hpp"
#include "collabpred/tasks.hpp"
#include "collabpred/view.hpp"
#include "collabpred/xes.hpp"

namespace {

using namespace collabpred;

bool verbose() {
    const char* v = std::getenv("COLLABPRED_VERBOSE");
    return v && *v && std::string_view(v) != "0";
}

void info(const std::string& message) {
    if (verbose()) std::cerr << "collabpred: " << message << "\n";
}

bool has_suffix(const std::string& path, std::string_view suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
}

EventLog load_log(const std::string& path) {
    const std::string text = read_file(path);
    if (has_suffix(path, ".xes")) return parse_xes(text);
    return parse_csv(text, ColumnMapping{});
}

void store_log(const EventLog& log, const std::string& path, const std::string& format) {
    if (format == "xes" || (format.empty() && has_suffix(path, ".xes")))
        atomic_write_file(path, write_xes(log));
    else
        atomic_write_file(path, write_csv(log, ColumnMapping{}));
}

std::string fmt_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void append_csv_field(std::string& out, std::string_view value) {
    const bool quote = value.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!quote) {
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

struct TaskFlags {
    std::string task_id;
    std::string scope;
    std::string participant;
    std::string message;
    bool messages_only = false;

    PredictionTask build() const {
        TaskOptions opts;
        opts.participant = participant;
        opts.message = message;
        opts.messages_only = messages_only;
        PredictionTask task = make_task(task_id, opts);
        if (scope == "process" && task.view.scope == ViewScope::Participant &&
            task.target_participant.empty())
            throw Error("MissingTaskOption",
                        "--scope process conflicts with --participant for " + task_id);
        return task;
    }

    void add_to(CLI::App* cmd, bool required_task = true) {
        auto* t = cmd->add_option("--task", task_id, "Task identifier (see README)");
        if (required_task) t->required();
        cmd->add_option("--scope", scope, "process|participant")
            ->check(CLI::IsMember({"process", "participant"}));
        cmd->add_option("--participant", participant,
                        "View participant (or target for outcome-participant)");
        cmd->add_option("--message", message, "Target message label");
        cmd->add_flag("--messages-only", messages_only,
                      "Restrict the task view to message events");
    }
};

struct EncoderFlags {
    int order = 3;
    bool with_participant = false;
    bool with_direction = false;
    bool skip_witnessed = false;
    CLI::Option* order_opt = nullptr;

    EncoderConfig build() const {
        return {order, with_participant, with_direction, skip_witnessed};
    }

    void add_to(CLI::App* cmd) {
        order_opt = cmd->add_option("--order", order, "Context length (n-gram order)")
                        ->check(CLI::NonNegativeNumber)
                        ->capture_default_str();
        cmd->add_flag("--encode-participant", with_participant,
                      "Append the last event's participant to the state");
        cmd->add_flag("--encode-direction", with_direction,
                      "Append the last event's direction to the state");
        cmd->add_flag("--skip-witnessed", skip_witnessed,
                      "Drop outcome rows whose prefix already shows the outcome");
    }
};

std::string participant_path(const std::string& out, const std::string& participant) {
    const std::size_t dot = out.rfind('.');
    if (dot == std::string::npos || out.find('/', dot) != std::string::npos)
        return out + "." + participant;
    return out.substr(0, dot) + "." + participant + out.substr(dot);
}

int run(int argc, char** argv) {
    CLI::App app{"Predictive monitoring toolkit for collaborative processes"};
    app.require_subcommand(1);

    // --- simulate ---------------------------------------------------------
    auto* sim = app.add_subcommand("simulate", "Generate a collaboration log");
    std::string sim_model = "healthcare", sim_out, sim_format = "csv", sim_start;
    std::int64_t sim_cases = 100;
    std::uint64_t sim_seed = 0;
    bool sim_split = false;
    sim->add_option("--model", sim_model, "Builtin model name or .collab file")
        ->capture_default_str();
    sim->add_option("--cases", sim_cases, "Number of cases")->capture_default_str();
    sim->add_option("--seed", sim_seed, "RNG seed")->capture_default_str();
    sim->add_option("--out", sim_out, "Output log path")->required();
    sim->add_option("--format", sim_format, "csv|xes")
        ->check(CLI::IsMember({"csv", "xes"}))
        ->capture_default_str();
    sim->add_option("--start", sim_start, "Start timestamp (ISO-8601)");
    sim->add_flag("--split", sim_split, "Also write one log per participant");

    // --- merge ------------------------------------------------------------
    auto* merge = app.add_subcommand("merge", "Merge participant logs by timestamp");
    std::vector<std::string> merge_inputs;
    std::string merge_out, merge_format;
    merge->add_option("inputs", merge_inputs, "Participant logs")->required();
    merge->add_option("--out", merge_out, "Output log path")->required();
    merge->add_option("--format", merge_format, "csv|xes (default: by extension)")
        ->check(CLI::IsMember({"csv", "xes"}));

    // --- view -------------------------------------------------------------
    auto* view = app.add_subcommand("view", "Filter a log through a view");
    std::string view_input, view_out, view_format, view_participant,
        view_direction = "any";
    bool view_messages_only = false;
    view->add_option("input", view_input, "Input log")->required();
    view->add_option("--out", view_out, "Output log path")->required();
    view->add_option("--participant", view_participant, "Keep one participant");
    view->add_flag("--messages-only", view_messages_only, "Keep message events only");
    view->add_option("--direction", view_direction, "any|send|receive")
        ->check(CLI::IsMember({"any", "send", "receive"}))
        ->capture_default_str();
    view->add_option("--format", view_format, "csv|xes (default: by extension)")
        ->check(CLI::IsMember({"csv", "xes"}));

    // --- dataset ----------------------------------------------------------
    auto* dataset = app.add_subcommand("dataset", "Encode a log into training rows");
    std::string ds_input, ds_out;
    TaskFlags ds_task;
    EncoderFlags ds_enc;
    dataset->add_option("input", ds_input, "Complete-trace training log")->required();
    dataset->add_option("--out", ds_out, "Output dataset path (JSON)")->required();
    ds_task.add_to(dataset);
    ds_enc.add_to(dataset);

    // --- train ------------------------------------------------------------
    auto* train_cmd = app.add_subcommand("train", "Train a frequency model");
    std::string train_input, train_out;
    TaskFlags train_task;
    EncoderFlags train_enc;
    std::int64_t train_min_count = 1;
    train_cmd->add_option("input", train_input, "Training log or dataset (.json)")
        ->required();
    train_cmd->add_option("--out", train_out, "Output model path")->required();
    train_task.add_to(train_cmd, /*required_task=*/false);
    train_enc.add_to(train_cmd);
    train_cmd->add_option("--min-count", train_min_count,
                          "Observations needed before a context answers")
        ->capture_default_str();

    // --- predict ----------------------------------------------------------
    auto* predict_cmd = app.add_subcommand("predict", "Predict on running cases");
    std::string pred_model, pred_input, pred_out;
    predict_cmd->add_option("--model", pred_model, "Model file")->required();
    predict_cmd->add_option("input", pred_input, "Log of incomplete traces")->required();
    predict_cmd->add_option("--out", pred_out, "Prediction CSV path")->required();

    // --- evaluate ---------------------------------------------------------
    auto* eval_cmd = app.add_subcommand("evaluate", "Score a model on a test log");
    std::string eval_model, eval_input, eval_out;
    eval_cmd->add_option("--model", eval_model, "Model file")->required();
    eval_cmd->add_option("input", eval_input, "Held-out test log")->required();
    eval_cmd->add_option("--out", eval_out, "Metrics CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // usage error
    }

    if (sim->parsed()) {
        CollabModel model;
        if (has_suffix(sim_model, ".collab"))
            model = parse_collab_model(read_file(sim_model));
        else
            model = builtin_model(sim_model);
        SimConfig config;
        config.n_cases = sim_cases;
        config.seed = sim_seed;
        if (!sim_start.empty()) {
            auto t = parse_iso8601(sim_start);
            if (!t) throw Error("UnparseableTimestamp", "'" + sim_start + "'");
            config.start = *t;
        }
        const EventLog log = simulate(model, config);
        store_log(log, sim_out, sim_format);
        info("simulated " + std::to_string(log.traces.size()) + " cases -> " + sim_out);
        if (sim_split) {
            for (const auto& [participant, part] : split_log(log)) {
                const std::string path = participant_path(sim_out, participant);
                store_log(part, path, sim_format);
                info("wrote " + path);
            }
        }
        return 0;
    }

    if (merge->parsed()) {
        std::vector<EventLog> parts;
        parts.reserve(merge_inputs.size());
        for (const std::string& path : merge_inputs) parts.push_back(load_log(path));
        store_log(merge_logs(parts), merge_out, merge_format);
        return 0;
    }

    if (view->parsed()) {
        ViewSpec spec;
        if (!view_participant.empty()) {
            spec.scope = ViewScope::Participant;
            spec.participant = view_participant;
        }
        if (view_messages_only) spec.content = ViewContent::MessagesOnly;
        if (view_direction == "send") spec.direction = DirectionFilter::SendOnly;
        if (view_direction == "receive") spec.direction = DirectionFilter::ReceiveOnly;
        const ViewResult result = apply_view_counted(load_log(view_input), spec);
        info("dropped " + std::to_string(result.dropped_traces) + " empty traces");
        store_log(result.log, view_out, view_format);
        return 0;
    }

    if (dataset->parsed()) {
        const Dataset ds =
            generate_dataset(load_log(ds_input), ds_task.build(), ds_enc.build());
        info("encoded " + std::to_string(ds.rows.size()) + " rows, skipped " +
             std::to_string(ds.skipped_undefined) + " undefined targets");
        atomic_write_file(ds_out, write_dataset(ds));
        return 0;
    }

    if (train_cmd->parsed()) {
        Dataset ds;
        if (has_suffix(train_input, ".json")) {
            ds = parse_dataset(read_file(train_input));
            if (!train_task.task_id.empty()) {
                const PredictionTask requested = train_task.build();
                if (requested.kind != ds.task.kind ||
                    requested.target_participant != ds.task.target_participant ||
                    requested.target_message != ds.task.target_message ||
                    requested.view.direction != ds.task.view.direction)
                    throw Error("ModelTaskMismatch",
                                "--task disagrees with the dataset's task");
            }
        } else {
            if (train_task.task_id.empty())
                throw Error("MissingTaskOption", "--task is required when training from a log");
            ds = generate_dataset(load_log(train_input), train_task.build(),
                                  train_enc.build());
        }
        std::optional<int> order;
        if (!has_suffix(train_input, ".json") || train_enc.order_opt->count() > 0)
            order = train_enc.order;
        const FrequencyModel model = train(ds, order, train_min_count);
        atomic_write_file(train_out, write_model(model));
        info("trained on " + std::to_string(ds.rows.size()) + " rows -> " + train_out);
        return 0;
    }

    if (predict_cmd->parsed()) {
        const FrequencyModel model = parse_model(read_file(pred_model));
        const EventLog running = load_log(pred_input);
        std::string out = "case_id,prediction,confidence\n";
        std::size_t empty_in_view = 0;
        for (const Trace& t : running.traces) {
            append_csv_field(out, t.case_id);
            out += ',';
            try {
                const PredictionResult r = predict(model, t);
                if (model.numeric) {
                    append_csv_field(out, fmt_double(r.estimate));
                    out += ',';
                } else {
                    append_csv_field(out, *r.label);
                    out += ',';
                    append_csv_field(out, fmt_double(r.confidence));
                }
            } catch (const Error& e) {
                if (e.code() != "PrefixEmptyInView") throw;
                ++empty_in_view;
                out += ',';
            }
            out += '\n';
        }
        if (empty_in_view > 0)
            std::cerr << "collabpred: PrefixEmptyInView for " << empty_in_view
                      << " trace(s); rows left empty\n";
        atomic_write_file(pred_out, out);
        return 0;
    }

    if (eval_cmd->parsed()) {
        const FrequencyModel model = parse_model(read_file(eval_model));
        const Metrics m = evaluate(model, load_log(eval_input));
        std::cout << metrics_to_text(m);
        if (!eval_out.empty()) atomic_write_file(eval_out, metrics_to_csv(m));
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "InternalError: " << e.what() << "\n";
        return 1;
    }
}
