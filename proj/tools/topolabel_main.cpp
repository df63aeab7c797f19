// topolabel: semi-supervised point labeling via persistence diagram
// perturbation. Subcommands cover the full pipeline: diagram
// computation, diagram distances, single-run annotation, threshold/
// metric sweeps, and the brute-force cross-check suite.

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <unordered_map>

#include "topolabel/annotator.hpp"
#include "topolabel/csv.hpp"
#include "topolabel/diagram_distance.hpp"
#include "topolabel/error.hpp"
#include "topolabel/experiment.hpp"
#include "topolabel/oracle.hpp"
#include "topolabel/persistence.hpp"
#include "topolabel/point_cloud.hpp"
#include "topolabel/rips.hpp"

namespace {

using namespace topolabel;

std::string fmt(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(Errc::IngestError, "cannot open '" + path + "' for writing");
    return out;
}

struct MetricFlags {
    std::string metric = "bottleneck";
    double q = 1.0;
    std::string aggregation = "max";
    int single_dim = 0;

    DiagramMetric build() const {
        DiagramMetric m;
        m.kind = parse_metric_kind(metric);
        m.q = q;
        m.aggregation = parse_aggregation(aggregation);
        m.single_dim = single_dim;
        return m;
    }
};

void add_metric_flags(CLI::App& cmd, MetricFlags& flags) {
    cmd.add_option("--metric", flags.metric, "Diagram distance: bottleneck or wasserstein")
        ->capture_default_str();
    cmd.add_option("--q", flags.q, "Wasserstein order (>= 1)")->capture_default_str();
    cmd.add_option("--agg", flags.aggregation,
                   "Combine per-degree distances: max, sum or single")
        ->capture_default_str();
    cmd.add_option("--single-dim", flags.single_dim,
                   "Homology degree used when --agg single")
        ->capture_default_str();
}

int cmd_persistence(const std::string& csv_path, const std::string& label_column,
                    int max_homology_dim, std::optional<double> radius,
                    const std::string& normalization, const std::string& essential_policy,
                    const std::string& output) {
    PointCloud cloud = load_point_cloud(csv_path, label_column);
    cloud = normalize(cloud, parse_normalization(normalization));
    const DistanceMatrix dmat = pairwise_distances(cloud);
    const Filtration filt = build_rips(dmat, max_homology_dim + 1, radius);
    const PersistenceDiagram diag =
        finitize(compute_persistence(filt), parse_essential_policy(essential_policy));
    if (output.empty()) {
        write_diagram_json(std::cout, diag);
    } else {
        std::ofstream out = open_output(output);
        write_diagram_json(out, diag);
    }
    return 0;
}

PersistenceDiagram load_diagram(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::IngestError, "cannot open diagram file '" + path + "'");
    return read_diagram_json(in);
}

int cmd_distance(const std::string& path1, const std::string& path2, const MetricFlags& flags,
                 const std::string& essential_policy) {
    const EssentialPolicy policy = parse_essential_policy(essential_policy);
    const PersistenceDiagram d1 = finitize(load_diagram(path1), policy);
    const PersistenceDiagram d2 = finitize(load_diagram(path2), policy);
    std::cout << fmt(diagram_distance(d1, d2, flags.build())) << "\n";
    return 0;
}

int cmd_annotate(const std::string& csv_path, const std::string& label_column, double threshold,
                 const MetricFlags& flags, int max_homology_dim,
                 const std::string& normalization, const std::string& essential_policy,
                 const std::string& tie_policy, const std::string& output) {
    const CsvTable table = read_csv_file(csv_path);
    PointCloud cloud = table_to_cloud(table, label_column);
    if (!cloud.has_labels())
        throw Error(Errc::IngestError,
                    "'" + csv_path + "' has no '" + label_column + "' column");
    cloud = normalize(cloud, parse_normalization(normalization));
    const LabelSplit split = split_by_label(cloud);

    AnnotatorConfig config;
    config.threshold = threshold;
    config.metric = flags.build();
    config.tie_policy = parse_tie_policy(tie_policy);
    config.essential_policy = parse_essential_policy(essential_policy);
    config.max_homology_dim = max_homology_dim;

    const std::vector<LabelDecision> decisions =
        annotate_set(split.class1, split.class2, split.unlabeled, config);
    std::unordered_map<int, const LabelDecision*> by_id;
    for (const LabelDecision& d : decisions) by_id.emplace(d.point_id, &d);

    std::ofstream file;
    if (!output.empty()) file = open_output(output);
    std::ostream& out = output.empty() ? std::cout : file;

    for (std::size_t c = 0; c < table.header.size(); ++c)
        out << table.header[c] << (c + 1 < table.header.size() ? "," : "");
    out << ",assigned,d1,d2\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        for (std::size_t c = 0; c < table.rows[r].size(); ++c)
            out << table.rows[r][c] << (c + 1 < table.rows[r].size() ? "," : "");
        const int label = cloud.labels[r];
        if (label == 1 || label == 2) {
            out << "," << label << ",,\n"; // already labeled: passes through
            continue;
        }
        const auto it = by_id.find(static_cast<int>(r));
        if (it == by_id.end() || !it->second->error.empty()) {
            if (it != by_id.end())
                std::cerr << "warning: point " << r << ": " << it->second->error << "\n";
            out << ",none,,\n";
            continue;
        }
        const LabelDecision& d = *it->second;
        out << "," << outcome_name(d.outcome) << "," << fmt(d.d1) << "," << fmt(d.d2) << "\n";
    }
    if (!out) throw Error(Errc::IngestError, "failed writing annotated rows");
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& output_override) {
    ExperimentSpec spec = read_experiment_spec(config_path);
    if (!output_override.empty()) spec.output = output_override;
    const ExperimentResult result = run_experiment(spec);
    if (spec.output.empty())
        write_results_csv(std::cout, result);
    else
        write_results_csv(spec.output, result);
    return 0;
}

int cmd_oracle(std::size_t n, std::uint64_t seed) {
    const int failures = run_oracle_suite(n, seed, std::cout);
    if (failures > 0)
        throw Error(Errc::OracleMismatch, std::to_string(failures) + " cross-check(s) failed");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semi-supervised point labeling via persistence diagram perturbation"};
    app.require_subcommand(1);

    // persistence
    auto* persistence_cmd = app.add_subcommand(
        "persistence", "Compute the Vietoris-Rips persistence diagram of a CSV point cloud");
    std::string p_csv, p_label = "label", p_norm = "min-max", p_policy = "none", p_out;
    int p_max_dim = 1;
    std::optional<double> p_radius;
    persistence_cmd->add_option("csv", p_csv, "Input CSV (one point per row)")->required();
    persistence_cmd->add_option("--label-column", p_label,
                                "Final column treated as class label, not a feature")
        ->capture_default_str();
    persistence_cmd->add_option("--max-dim", p_max_dim, "Maximum homology degree to report")
        ->capture_default_str();
    persistence_cmd->add_option("--radius", p_radius,
                                "Filtration radius bound (default: enclosing radius)");
    persistence_cmd->add_option("--normalize", p_norm, "Feature scaling: min-max, z-score, none")
        ->capture_default_str();
    persistence_cmd
        ->add_option("--essential-policy", p_policy,
                     "Infinite deaths: none (keep), drop, cap (at enclosing radius)")
        ->capture_default_str();
    persistence_cmd->add_option("-o,--output", p_out, "Write JSON here instead of stdout");

    // distance
    auto* distance_cmd =
        app.add_subcommand("distance", "Distance between two persistence diagram JSON files");
    std::string d_path1, d_path2, d_policy = "none";
    MetricFlags d_metric;
    distance_cmd->add_option("diagram1", d_path1, "First diagram JSON")->required();
    distance_cmd->add_option("diagram2", d_path2, "Second diagram JSON")->required();
    add_metric_flags(*distance_cmd, d_metric);
    distance_cmd
        ->add_option("--essential-policy", d_policy,
                     "Finitize imported diagrams first: none or drop")
        ->capture_default_str();

    // annotate
    auto* annotate_cmd = app.add_subcommand(
        "annotate", "Label the unlabeled rows of a CSV against its labeled classes");
    std::string a_csv, a_label = "label", a_norm = "min-max", a_policy = "cap",
                a_tie = "unlabeled", a_out;
    double a_threshold = 0.6;
    int a_max_dim = 1;
    MetricFlags a_metric;
    annotate_cmd->add_option("csv", a_csv, "Input CSV with a label column (1, 2 or empty)")
        ->required();
    annotate_cmd->add_option("--label-column", a_label, "Name of the label column")
        ->capture_default_str();
    annotate_cmd
        ->add_option("--threshold", a_threshold,
                     "Maximum accepted perturbation distance; 0 accepts everything")
        ->capture_default_str();
    add_metric_flags(*annotate_cmd, a_metric);
    annotate_cmd->add_option("--max-dim", a_max_dim, "Maximum homology degree")
        ->capture_default_str();
    annotate_cmd->add_option("--normalize", a_norm, "Feature scaling: min-max, z-score, none")
        ->capture_default_str();
    annotate_cmd->add_option("--essential-policy", a_policy, "Infinite deaths: drop or cap")
        ->capture_default_str();
    annotate_cmd->add_option("--tie-policy", a_tie, "Exact tie d1 == d2: unlabeled or class1")
        ->capture_default_str();
    annotate_cmd->add_option("-o,--output", a_out, "Write annotated CSV here instead of stdout");

    // sweep
    auto* sweep_cmd =
        app.add_subcommand("sweep", "Run a metric x threshold grid from a config file");
    std::string s_config, s_out;
    sweep_cmd->add_option("config", s_config, "Experiment config (key = value lines)")
        ->required();
    sweep_cmd->add_option("-o,--output", s_out, "Results CSV path (overrides config)");

    // oracle
    auto* oracle_cmd = app.add_subcommand(
        "oracle", "Cross-check the pipeline against brute-force reimplementations");
    std::size_t o_n = 7;
    std::uint64_t o_seed = 1;
    oracle_cmd->add_option("n", o_n, "Random points per check, 4-16")->required();
    oracle_cmd->add_option("seed", o_seed, "Random seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*persistence_cmd)
            return cmd_persistence(p_csv, p_label, p_max_dim, p_radius, p_norm, p_policy, p_out);
        if (*distance_cmd) return cmd_distance(d_path1, d_path2, d_metric, d_policy);
        if (*annotate_cmd)
            return cmd_annotate(a_csv, a_label, a_threshold, a_metric, a_max_dim, a_norm,
                                a_policy, a_tie, a_out);
        if (*sweep_cmd) return cmd_sweep(s_config, s_out);
        if (*oracle_cmd) return cmd_oracle(o_n, o_seed);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: Internal: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
