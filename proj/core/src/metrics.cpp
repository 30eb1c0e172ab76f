#include "collabpred/metrics.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace collabpred {

namespace {

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

} // namespace

Metrics evaluate(const FrequencyModel& model, const EventLog& test_log) {
    const Dataset ds = generate_dataset(test_log, model.task, model.encoder);

    Metrics m;
    m.numeric = model.numeric;
    m.rows = static_cast<std::int64_t>(ds.rows.size());
    m.excluded_undefined = ds.skipped_undefined;
    m.excluded_witnessed = ds.skipped_witnessed;
    m.excluded_empty_view = ds.dropped_traces;

    if (model.numeric) {
        double abs_sum = 0.0, sq_sum = 0.0;
        for (const DatasetRow& row : ds.rows) {
            const PredictionResult r = predict_state(model, row.state);
            const double err = r.estimate - target_value(row.target);
            abs_sum += std::abs(err);
            sq_sum += err * err;
        }
        if (m.rows > 0) {
            m.mae = abs_sum / static_cast<double>(m.rows);
            m.rmse = std::sqrt(sq_sum / static_cast<double>(m.rows));
        }
        return m;
    }

    std::int64_t correct = 0;
    std::map<std::string, std::int64_t> true_count, predicted_count, hit_count;
    for (const DatasetRow& row : ds.rows) {
        const PredictionResult r = predict_state(model, row.state);
        const std::string truth = target_to_string(row.target);
        const std::string& predicted = *r.label;
        ++true_count[truth];
        ++predicted_count[predicted];
        if (predicted == truth) {
            ++correct;
            ++hit_count[truth];
        }
    }
    if (m.rows > 0)
        m.accuracy = static_cast<double>(correct) / static_cast<double>(m.rows);

    std::set<std::string> labels;
    for (const auto& [l, n] : true_count) labels.insert(l);
    for (const auto& [l, n] : predicted_count) labels.insert(l);
    double f1_sum = 0.0;
    for (const std::string& l : labels) {
        LabelMetrics lm;
        lm.label = l;
        lm.support = true_count.count(l) ? true_count[l] : 0;
        const std::int64_t hits = hit_count.count(l) ? hit_count[l] : 0;
        const std::int64_t predicted = predicted_count.count(l) ? predicted_count[l] : 0;
        lm.precision = predicted > 0 ? static_cast<double>(hits) / predicted : 0.0;
        lm.recall = lm.support > 0 ? static_cast<double>(hits) / lm.support : 0.0;
        lm.f1 = lm.precision + lm.recall > 0
                    ? 2 * lm.precision * lm.recall / (lm.precision + lm.recall)
                    : 0.0;
        f1_sum += lm.f1;
        m.per_label.push_back(std::move(lm));
    }
    if (!m.per_label.empty())
        m.macro_f1 = f1_sum / static_cast<double>(m.per_label.size());
    return m;
}

std::string metrics_to_csv(const Metrics& m) {
    std::string out = "metric,label,value\n";
    auto row = [&out](std::string_view metric, std::string_view label,
                      const std::string& value) {
        append_csv_field(out, metric);
        out += ',';
        append_csv_field(out, label);
        out += ',';
        append_csv_field(out, value);
        out += '\n';
    };
    row("rows", "", std::to_string(m.rows));
    if (m.numeric) {
        row("mae", "", fmt_double(m.mae));
        row("rmse", "", fmt_double(m.rmse));
    } else {
        row("accuracy", "", fmt_double(m.accuracy));
        row("macro_f1", "", fmt_double(m.macro_f1));
        for (const LabelMetrics& lm : m.per_label) {
            row("support", lm.label, std::to_string(lm.support));
            row("precision", lm.label, fmt_double(lm.precision));
            row("recall", lm.label, fmt_double(lm.recall));
            row("f1", lm.label, fmt_double(lm.f1));
        }
    }
    row("excluded_undefined", "", std::to_string(m.excluded_undefined));
    row("excluded_witnessed", "", std::to_string(m.excluded_witnessed));
    row("excluded_empty_view", "", std::to_string(m.excluded_empty_view));
    return out;
}

std::string metrics_to_text(const Metrics& m) {
    std::ostringstream out;
    out << "rows: " << m.rows << "\n";
    if (m.numeric) {
        out << "mae:  " << fmt_double(m.mae) << "\n";
        out << "rmse: " << fmt_double(m.rmse) << "\n";
    } else {
        out << "accuracy: " << fmt_double(m.accuracy) << "\n";
        out << "macro-f1: " << fmt_double(m.macro_f1) << "\n";
        for (const LabelMetrics& lm : m.per_label)
            out << "  " << lm.label << ": support=" << lm.support
                << " precision=" << fmt_double(lm.precision)
                << " recall=" << fmt_double(lm.recall)
                << " f1=" << fmt_double(lm.f1) << "\n";
    }
    out << "excluded: undefined=" << m.excluded_undefined
        << " witnessed=" << m.excluded_witnessed
        << " empty-view=" << m.excluded_empty_view << "\n";
    return out.str();
}

} // namespace collabpred
