#include "collabpred/model.hpp"

#include <json.hpp>

#include <algorithm>

#include "serial_detail.hpp"

namespace collabpred {

namespace {

std::string u128_to_string(unsigned __int128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out += static_cast<char>('0' + static_cast<int>(v % 10));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

unsigned __int128 u128_from_string(const std::string& s) {
    unsigned __int128 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw Error("MalformedFile", "bad sumsq '" + s + "'");
        v = v * 10 + static_cast<unsigned>(c - '0');
    }
    return v;
}

std::int64_t numeric_target_value(const Target& t) {
    if (const auto* n = std::get_if<std::int64_t>(&t)) return *n;
    if (const auto* d = std::get_if<Duration>(&t)) return d->count();
    throw Error("ModelTaskMismatch", "numeric model fed a non-numeric target");
}

} // namespace

FrequencyModel train(const Dataset& ds, std::optional<int> order,
                     std::int64_t min_count) {
    if (ds.rows.empty()) throw Error("EmptyDataset", "no training rows");
    const int n = order.value_or(ds.encoder.order);
    if (n < 0 || n > ds.encoder.order)
        throw Error("InvalidOrder",
                    "order " + std::to_string(n) + " exceeds encoder order " +
                        std::to_string(ds.encoder.order));

    FrequencyModel model;
    model.task = ds.task;
    model.encoder = ds.encoder;
    model.order = n;
    model.min_count = min_count;
    model.numeric = family_of(ds.task.kind) == TaskFamily::Numeric;
    model.training_log_hash = ds.source_log_hash;

    if (model.numeric)
        model.num_tables.resize(static_cast<std::size_t>(n) + 1);
    else
        model.cat_tables.resize(static_cast<std::size_t>(n) + 1);

    for (const DatasetRow& row : ds.rows) {
        for (int j = 0; j <= n; ++j) {
            const StateKey key = backoff_key(row.state, j, ds.encoder);
            if (model.numeric) {
                NumericCell& cell = model.num_tables[static_cast<std::size_t>(j)][key];
                const std::int64_t v = numeric_target_value(row.target);
                cell.count += 1;
                cell.sum += v;
                cell.sumsq += static_cast<unsigned __int128>(
                    static_cast<__int128>(v) * static_cast<__int128>(v));
            } else {
                CategoricalCell& cell =
                    model.cat_tables[static_cast<std::size_t>(j)][key];
                cell.counts[target_to_string(row.target)] += 1;
                cell.total += 1;
            }
        }
    }
    return model;
}

PredictionResult predict_state(const FrequencyModel& model, const StateKey& state) {
    for (int j = model.order; j >= 0; --j) {
        const StateKey key = backoff_key(state, j, model.encoder);
        if (model.numeric) {
            const auto& table = model.num_tables[static_cast<std::size_t>(j)];
            auto it = table.find(key);
            if (it == table.end()) continue;
            if (j > 0 && it->second.count < model.min_count) continue;
            PredictionResult r;
            r.backoff_order = j;
            r.estimate = static_cast<double>(it->second.sum) /
                         static_cast<double>(it->second.count);
            return r;
        }
        const auto& table = model.cat_tables[static_cast<std::size_t>(j)];
        auto it = table.find(key);
        if (it == table.end()) continue;
        if (j > 0 && it->second.total < model.min_count) continue;
        PredictionResult r;
        r.backoff_order = j;
        const CategoricalCell& cell = it->second;
        const std::string* best = nullptr;
        std::int64_t best_count = -1;
        for (const auto& [label, count] : cell.counts) {
            r.distribution[label] =
                static_cast<double>(count) / static_cast<double>(cell.total);
            if (count > best_count) { // map order makes ties lexicographic-min
                best = &label;
                best_count = count;
            }
        }
        r.label = *best;
        r.confidence = static_cast<double>(best_count) / static_cast<double>(cell.total);
        return r;
    }
    throw Error("EmptyDataset", "model has no global statistics");
}

PredictionResult predict(const FrequencyModel& model, std::span<const Event> prefix) {
    const ViewSpec v = trace_view(model.task);
    Trace visible;
    for (const Event& e : prefix)
        if (event_in_view(e, v)) visible.events.push_back(e);
    if (visible.events.empty())
        throw Error("PrefixEmptyInView",
                    "no event of the prefix is visible in the model's view");
    visible.case_id = visible.events.front().case_id;
    return predict_state(model,
                         encode_prefix(visible, visible.events.size(), model.encoder));
}

PredictionResult predict(const FrequencyModel& model, const Prefix& prefix) {
    return predict(model, prefix.events());
}

PredictionResult predict(const FrequencyModel& model, const Trace& running_trace) {
    return predict(model, std::span<const Event>(running_trace.events));
}

std::string write_model(const FrequencyModel& model) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["format"] = "collabpred-model";
    j["schema_version"] = 1;
    j["task"] = serial::task_to_json(model.task);
    j["encoder"] = serial::encoder_to_json(model.encoder);
    j["order"] = model.order;
    j["min_count"] = model.min_count;
    j["numeric"] = model.numeric;
    j["training_log_hash"] = model.training_log_hash;
    if (model.numeric) {
        ordered_json tables = ordered_json::array();
        for (const auto& table : model.num_tables) {
            ordered_json t = ordered_json::object();
            for (const auto& [key, cell] : table) {
                ordered_json c;
                c["count"] = cell.count;
                c["sum"] = cell.sum;
                c["sumsq"] = u128_to_string(cell.sumsq);
                t[key] = std::move(c);
            }
            tables.push_back(std::move(t));
        }
        j["numeric_tables"] = std::move(tables);
    } else {
        ordered_json tables = ordered_json::array();
        for (const auto& table : model.cat_tables) {
            ordered_json t = ordered_json::object();
            for (const auto& [key, cell] : table) {
                ordered_json c = ordered_json::object();
                for (const auto& [label, count] : cell.counts) c[label] = count;
                t[key] = std::move(c);
            }
            tables.push_back(std::move(t));
        }
        j["tables"] = std::move(tables);
    }
    return j.dump(1) + "\n";
}

FrequencyModel parse_model(std::string_view text) {
    using nlohmann::ordered_json;
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw Error("MalformedFile", e.what());
    }
    try {
        if (j.at("format").get<std::string>() != "collabpred-model")
            throw Error("MalformedFile", "not a model file");
        if (j.at("schema_version").get<int>() != 1)
            throw Error("ModelVersionMismatch",
                        "model schema_version " + j["schema_version"].dump());
        FrequencyModel model;
        model.task = serial::task_from_json(j.at("task"));
        model.encoder = serial::encoder_from_json(j.at("encoder"));
        model.order = j.at("order").get<int>();
        model.min_count = j.at("min_count").get<std::int64_t>();
        model.numeric = j.at("numeric").get<bool>();
        model.training_log_hash = j.at("training_log_hash").get<std::string>();
        if (model.numeric) {
            for (const auto& table : j.at("numeric_tables")) {
                std::map<StateKey, NumericCell> t;
                for (const auto& [key, cell] : table.items()) {
                    NumericCell c;
                    c.count = cell.at("count").get<std::int64_t>();
                    c.sum = cell.at("sum").get<std::int64_t>();
                    c.sumsq = u128_from_string(cell.at("sumsq").get<std::string>());
                    t[key] = c;
                }
                model.num_tables.push_back(std::move(t));
            }
            if (model.num_tables.size() != static_cast<std::size_t>(model.order) + 1)
                throw Error("MalformedFile", "table count does not match order");
        } else {
            for (const auto& table : j.at("tables")) {
                std::map<StateKey, CategoricalCell> t;
                for (const auto& [key, cell] : table.items()) {
                    CategoricalCell c;
                    for (const auto& [label, count] : cell.items()) {
                        c.counts[label] = count.get<std::int64_t>();
                        c.total += count.get<std::int64_t>();
                    }
                    t[key] = std::move(c);
                }
                model.cat_tables.push_back(std::move(t));
            }
            if (model.cat_tables.size() != static_cast<std::size_t>(model.order) + 1)
                throw Error("MalformedFile", "table count does not match order");
        }
        return model;
    } catch (const ordered_json::exception& e) {
        throw Error("MalformedFile", e.what());
    }
}

} // namespace collabpred
