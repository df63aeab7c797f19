#include "topolabel/experiment.hpp"

#include "topolabel/csv.hpp"
#include "topolabel/error.hpp"
#include "topolabel/random.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <unordered_set>

namespace topolabel {

const char* const kResultsHeader =
    "dataset,metric,q,threshold,max_dim,essential_policy,"
    "pct_labeled,pct_correct,n_class1,n_class2,n_unlabeled,wall_ms";

namespace {

std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw Error(Errc::InvalidArgument, "unformattable number");
    return std::string(buf, end);
}

double parse_double(std::string_view text, const std::string& where) {
    const std::string token(text);
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (token.empty() || end != token.c_str() + token.size())
        throw Error(Errc::IngestError, where + ": expected a number, got '" + token + "'");
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// ---- config file ----------------------------------------------------------

struct ConfigValue {
    enum class Kind { String, Number, Bool, Array };
    Kind kind = Kind::Number;
    std::string text;  // String: contents, Number: raw token
    double number = 0.0;
    bool flag = false;
    std::vector<ConfigValue> items;
};

// `where` is "file:line" for error messages.
ConfigValue parse_scalar(std::string_view token, const std::string& where) {
    ConfigValue value;
    if (token.size() >= 2 && token.front() == '"' && token.back() == '"') {
        value.kind = ConfigValue::Kind::String;
        value.text = std::string(token.substr(1, token.size() - 2));
        if (value.text.find('"') != std::string::npos)
            throw Error(Errc::IngestError, where + ": stray quote in string");
        return value;
    }
    if (token == "true" || token == "false") {
        value.kind = ConfigValue::Kind::Bool;
        value.flag = token == "true";
        return value;
    }
    value.kind = ConfigValue::Kind::Number;
    value.text = std::string(token);
    value.number = parse_double(token, where);
    return value;
}

ConfigValue parse_value(std::string_view token, const std::string& where) {
    if (!token.empty() && token.front() == '[') {
        if (token.back() != ']') throw Error(Errc::IngestError, where + ": unterminated array");
        ConfigValue value;
        value.kind = ConfigValue::Kind::Array;
        std::string_view body = trim(token.substr(1, token.size() - 2));
        while (!body.empty()) {
            std::size_t cut = body.size();
            bool quoted = false;
            for (std::size_t i = 0; i < body.size(); ++i) {
                if (body[i] == '"') quoted = !quoted;
                else if (body[i] == ',' && !quoted) { cut = i; break; }
            }
            value.items.push_back(parse_scalar(trim(body.substr(0, cut)), where));
            body = cut == body.size() ? std::string_view{} : trim(body.substr(cut + 1));
        }
        return value;
    }
    return parse_scalar(token, where);
}

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        else if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

const ConfigValue& expect(const ConfigValue& v, ConfigValue::Kind kind, const std::string& key) {
    if (v.kind != kind) {
        const char* names[] = {"a string", "a number", "a boolean", "an array"};
        throw Error(Errc::IngestError,
                    "key '" + key + "' expects " + names[static_cast<int>(kind)]);
    }
    return v;
}

int to_int(const ConfigValue& v, const std::string& key) {
    expect(v, ConfigValue::Kind::Number, key);
    if (std::floor(v.number) != v.number || std::abs(v.number) > 1e9)
        throw Error(Errc::IngestError, "key '" + key + "' expects an integer");
    return static_cast<int>(v.number);
}

std::uint64_t to_u64(const ConfigValue& v, const std::string& key) {
    expect(v, ConfigValue::Kind::Number, key);
    char* end = nullptr;
    const unsigned long long raw = std::strtoull(v.text.c_str(), &end, 10);
    if (end != v.text.c_str() + v.text.size() || v.text.find('-') != std::string::npos)
        throw Error(Errc::IngestError, "key '" + key + "' expects a non-negative integer");
    return raw;
}

// ---- result formatting ----------------------------------------------------

void check_plain(const std::string& text, const std::string& what) {
    if (text.find_first_of(",\"\n\r") != std::string::npos)
        throw Error(Errc::InvalidArgument, what + " may not contain commas, quotes or newlines");
}

std::string row_to_line(const ResultRow& row) {
    check_plain(row.dataset, "dataset path");
    check_plain(row.metric, "metric name");
    check_plain(row.essential_policy, "essential policy name");
    std::ostringstream out;
    out << row.dataset << ',' << row.metric << ',' << format_double(row.q) << ','
        << format_double(row.threshold) << ',' << row.max_dim << ',' << row.essential_policy
        << ',' << format_double(row.pct_labeled) << ',' << format_double(row.pct_correct) << ','
        << row.n_class1 << ',' << row.n_class2 << ',' << row.n_unlabeled << ','
        << format_double(row.wall_ms);
    return out.str();
}

std::size_t parse_count(const std::string& cell, const std::string& where) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(cell.c_str(), &end, 10);
    if (cell.empty() || end != cell.c_str() + cell.size())
        throw Error(Errc::IngestError, where + ": expected a count, got '" + cell + "'");
    return static_cast<std::size_t>(v);
}

} // namespace

void ExperimentSpec::validate() const {
    if (dataset.empty()) throw Error(Errc::InvalidArgument, "experiment needs a dataset path");
    if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0))
        throw Error(Errc::InvalidArgument, "holdout fraction must lie in (0,1), got " +
                                               format_double(holdout_fraction));
    if (thresholds.empty()) throw Error(Errc::InvalidArgument, "threshold list is empty");
    for (double t : thresholds)
        if (std::isnan(t) || t < 0.0)
            throw Error(Errc::InvalidArgument, "thresholds must be >= 0");
    for (const DiagramMetric& metric : metrics)
        if (metric.kind == MetricKind::Wasserstein && !(metric.q >= 1.0))
            throw Error(Errc::InvalidOrder, "wasserstein order must be >= 1");
    if (max_homology_dim < 0)
        throw Error(Errc::InvalidArgument, "max homology dimension must be >= 0");
}

ExperimentSpec parse_experiment_spec(std::istream& in, const std::string& origin) {
    ExperimentSpec spec;
    std::unordered_set<std::string> seen;
    std::vector<std::string> metric_names;
    double q = 1.0;
    DimAggregation aggregation = DimAggregation::Max;
    int single_dim = -1;

    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        const std::string where = origin + ":" + std::to_string(lineno);
        const std::string stripped = strip_comment(line);
        const std::string_view body = trim(stripped);
        if (body.empty()) continue;
        const std::size_t eq = body.find('=');
        if (eq == std::string_view::npos)
            throw Error(Errc::IngestError, where + ": expected 'key = value'");
        const std::string key{trim(body.substr(0, eq))};
        if (key.empty()) throw Error(Errc::IngestError, where + ": missing key");
        if (!seen.insert(key).second)
            throw Error(Errc::IngestError, where + ": duplicate key '" + key + "'");
        const ConfigValue value = parse_value(trim(body.substr(eq + 1)), where);

        try {
            if (key == "dataset") {
                spec.dataset = expect(value, ConfigValue::Kind::String, key).text;
            } else if (key == "label_column") {
                spec.label_column = expect(value, ConfigValue::Kind::String, key).text;
            } else if (key == "holdout_fraction") {
                spec.holdout_fraction = expect(value, ConfigValue::Kind::Number, key).number;
            } else if (key == "seed") {
                spec.seed = to_u64(value, key);
            } else if (key == "thresholds") {
                expect(value, ConfigValue::Kind::Array, key);
                spec.thresholds.clear();
                for (const ConfigValue& item : value.items)
                    spec.thresholds.push_back(expect(item, ConfigValue::Kind::Number, key).number);
            } else if (key == "metrics") {
                expect(value, ConfigValue::Kind::Array, key);
                for (const ConfigValue& item : value.items)
                    metric_names.push_back(expect(item, ConfigValue::Kind::String, key).text);
            } else if (key == "q") {
                q = expect(value, ConfigValue::Kind::Number, key).number;
            } else if (key == "aggregation") {
                aggregation =
                    parse_aggregation(expect(value, ConfigValue::Kind::String, key).text);
            } else if (key == "single_dim") {
                single_dim = to_int(value, key);
            } else if (key == "max_dim") {
                spec.max_homology_dim = to_int(value, key);
            } else if (key == "normalization") {
                spec.normalization =
                    parse_normalization(expect(value, ConfigValue::Kind::String, key).text);
            } else if (key == "essential_policy") {
                spec.essential_policy =
                    parse_essential_policy(expect(value, ConfigValue::Kind::String, key).text);
            } else if (key == "tie_policy") {
                spec.tie_policy =
                    parse_tie_policy(expect(value, ConfigValue::Kind::String, key).text);
            } else if (key == "output") {
                spec.output = expect(value, ConfigValue::Kind::String, key).text;
            } else if (key == "timing") {
                spec.timing = expect(value, ConfigValue::Kind::Bool, key).flag;
            } else {
                throw Error(Errc::IngestError, "unknown key '" + key + "'");
            }
        } catch (const Error& e) {
            // Re-anchor value-level errors at the offending line.
            const std::string msg = e.message();
            if (msg.rfind(origin, 0) == 0) throw;
            throw Error(e.code(), where + ": " + msg);
        }
    }

    if (metric_names.empty()) metric_names = {"bottleneck", "wasserstein"};
    for (const std::string& name : metric_names) {
        DiagramMetric metric;
        metric.kind = parse_metric_kind(name);
        metric.q = q;
        metric.aggregation = aggregation;
        if (aggregation == DimAggregation::Single) {
            if (single_dim < 0)
                throw Error(Errc::IngestError,
                            origin + ": aggregation \"single\" needs single_dim");
            metric.single_dim = single_dim;
        }
        spec.metrics.push_back(metric);
    }
    spec.validate();
    return spec;
}

ExperimentSpec read_experiment_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IngestError, "cannot open config file '" + path + "'");
    return parse_experiment_spec(in, path);
}

HoldoutSplit stratified_holdout(const PointCloud& cloud, double fraction, std::uint64_t seed) {
    validate(cloud);
    if (!(fraction > 0.0 && fraction < 1.0))
        throw Error(Errc::InvalidArgument,
                    "holdout fraction must lie in (0,1), got " + format_double(fraction));
    if (!cloud.has_labels())
        throw Error(Errc::InvalidArgument, "holdout needs a labeled point cloud");

    std::vector<std::size_t> by_class[2];
    std::vector<char> hide(cloud.size(), 0);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (cloud.labels[i] == 1) by_class[0].push_back(i);
        else if (cloud.labels[i] == 2) by_class[1].push_back(i);
        else hide[i] = 1; // already unlabeled: always part of the query set
    }

    Rng rng(seed);
    for (std::vector<std::size_t>& members : by_class) {
        std::vector<std::size_t> order = members;
        rng.shuffle(order);
        const std::size_t k =
            static_cast<std::size_t>(std::llround(fraction * static_cast<double>(members.size())));
        for (std::size_t j = 0; j < k && j < order.size(); ++j) hide[order[j]] = 1;
    }

    std::vector<std::size_t> visible_idx, hidden_idx;
    for (std::size_t i = 0; i < cloud.size(); ++i) (hide[i] ? hidden_idx : visible_idx).push_back(i);

    HoldoutSplit split;
    split.visible = subset(cloud, visible_idx);
    split.hidden = subset(cloud, hidden_idx);
    split.hidden_truth.reserve(hidden_idx.size());
    for (std::size_t i : hidden_idx) split.hidden_truth.push_back(cloud.labels[i]);
    std::fill(split.hidden.labels.begin(), split.hidden.labels.end(), 0);

    std::size_t remaining[2] = {0, 0};
    for (int label : split.visible.labels)
        if (label == 1 || label == 2) ++remaining[label - 1];
    for (int c : {0, 1})
        if (remaining[c] < 2)
            throw Error(Errc::ClassTooSmall, "class " + std::to_string(c + 1) + " has " +
                                                 std::to_string(remaining[c]) +
                                                 " points after holdout; need at least 2");
    return split;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    PointCloud cloud = load_point_cloud(spec.dataset, spec.label_column);
    if (!cloud.has_labels())
        throw Error(Errc::IngestError,
                    "dataset '" + spec.dataset + "' has no '" + spec.label_column + "' column");
    cloud = normalize(cloud, spec.normalization);
    const HoldoutSplit split = stratified_holdout(cloud, spec.holdout_fraction, spec.seed);
    const LabelSplit classes = split_by_label(split.visible);

    AnnotatorConfig config;
    config.tie_policy = spec.tie_policy;
    config.essential_policy = spec.essential_policy;
    config.max_homology_dim = spec.max_homology_dim;
    const Annotator annotator(classes.class1, classes.class2, config);

    std::vector<DiagramMetric> metrics = spec.metrics;
    if (metrics.empty())
        metrics = {DiagramMetric{MetricKind::Bottleneck, 1.0, DimAggregation::Max, 0},
                   DiagramMetric{MetricKind::Wasserstein, 1.0, DimAggregation::Max, 0}};

    using Clock = std::chrono::steady_clock;
    ExperimentResult result;
    for (const DiagramMetric& metric : metrics) {
        const auto start = Clock::now();
        const std::vector<PointDistances> dists =
            annotator.distances(split.hidden, std::span<const DiagramMetric>{&metric, 1});
        const double metric_ms =
            spec.timing
                ? std::chrono::duration<double, std::milli>(Clock::now() - start).count()
                : 0.0;

        for (double threshold : spec.thresholds) {
            ResultRow row;
            row.dataset = spec.dataset;
            row.metric = metric_kind_name(metric.kind);
            row.q = metric.q;
            row.threshold = threshold;
            row.max_dim = spec.max_homology_dim;
            row.essential_policy = essential_policy_name(spec.essential_policy);
            row.wall_ms = metric_ms;

            std::size_t labeled = 0, with_truth = 0, correct = 0;
            for (std::size_t i = 0; i < split.hidden.size(); ++i) {
                Outcome outcome = Outcome::Unlabeled;
                if (dists[i].error.empty())
                    outcome = decide(dists[i].d1[0], dists[i].d2[0], threshold, spec.tie_policy);
                switch (outcome) {
                case Outcome::Class1: ++row.n_class1; break;
                case Outcome::Class2: ++row.n_class2; break;
                case Outcome::Unlabeled: ++row.n_unlabeled; break;
                }
                if (outcome == Outcome::Unlabeled) continue;
                ++labeled;
                const int truth = split.hidden_truth[i];
                if (truth == 0) continue;
                ++with_truth;
                if ((outcome == Outcome::Class1 && truth == 1) ||
                    (outcome == Outcome::Class2 && truth == 2))
                    ++correct;
            }
            const std::size_t total = split.hidden.size();
            row.pct_labeled = total == 0 ? 0.0 : 100.0 * static_cast<double>(labeled) /
                                                     static_cast<double>(total);
            row.pct_correct = with_truth == 0 ? 0.0 : 100.0 * static_cast<double>(correct) /
                                                          static_cast<double>(with_truth);
            result.rows.push_back(std::move(row));
        }
    }
    return result;
}

void write_results_csv(std::ostream& out, const ExperimentResult& result) {
    out << kResultsHeader << '\n';
    for (const ResultRow& row : result.rows) out << row_to_line(row) << '\n';
    if (!out) throw Error(Errc::IngestError, "failed writing results");
}

void write_results_csv(const std::string& path, const ExperimentResult& result) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::IngestError, "cannot open '" + path + "' for writing");
    write_results_csv(out, result);
}

ExperimentResult read_results_csv(std::istream& in) {
    CsvTable table = read_csv(in, "<results>");
    std::ostringstream header;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) header << ',';
        header << table.header[i];
    }
    if (header.str() != kResultsHeader)
        throw Error(Errc::IngestError, "unexpected results header '" + header.str() + "'");

    ExperimentResult result;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::vector<std::string>& cells = table.rows[r];
        const std::string where = "results row " + std::to_string(r + 1);
        ResultRow row;
        row.dataset = cells[0];
        row.metric = cells[1];
        row.q = parse_double(cells[2], where);
        row.threshold = parse_double(cells[3], where);
        row.max_dim = static_cast<int>(parse_count(cells[4], where));
        row.essential_policy = cells[5];
        row.pct_labeled = parse_double(cells[6], where);
        row.pct_correct = parse_double(cells[7], where);
        row.n_class1 = parse_count(cells[8], where);
        row.n_class2 = parse_count(cells[9], where);
        row.n_unlabeled = parse_count(cells[10], where);
        row.wall_ms = parse_double(cells[11], where);
        result.rows.push_back(std::move(row));
    }
    return result;
}

ExperimentResult read_results_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IngestError, "cannot open results file '" + path + "'");
    return read_results_csv(in);
}

} // namespace topolabel
