#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "topolabel/annotator.hpp"
#include "topolabel/diagram_distance.hpp"
#include "topolabel/persistence.hpp"
#include "topolabel/point_cloud.hpp"

namespace topolabel {

// Full description of one sweep run, as read from a config file.
struct ExperimentSpec {
    std::string dataset;                 // path to the input CSV
    std::string label_column = "label";
    double holdout_fraction = 0.0;       // required, must lie in (0,1)
    std::uint64_t seed = 0;
    std::vector<double> thresholds{0.8, 0.6, 0.4, 0.2, 0.0};
    std::vector<DiagramMetric> metrics;  // defaults to bottleneck + 1-Wasserstein
    int max_homology_dim = 1;
    Normalization normalization = Normalization::MinMax;
    EssentialPolicy essential_policy = EssentialPolicy::CapAtEnclosingRadius;
    TiePolicy tie_policy = TiePolicy::Unlabeled;
    std::string output;                  // results CSV path; empty = stdout
    bool timing = false;                 // when false, wall_ms is written as 0

    void validate() const;               // throws Error on out-of-range fields
};

// Parses a small key = value config (quoted strings, numbers, [a, b] arrays,
// '#' comments).  Unknown keys are an error so typos do not silently vanish.
ExperimentSpec read_experiment_spec(const std::string& path);
ExperimentSpec parse_experiment_spec(std::istream& in, const std::string& origin);

// One row of the results grid.
struct ResultRow {
    std::string dataset;
    std::string metric;        // "bottleneck" or "wasserstein"
    double q = 1.0;
    double threshold = 0.0;
    int max_dim = 1;
    std::string essential_policy;
    double pct_labeled = 0.0;
    double pct_correct = 0.0;
    std::size_t n_class1 = 0;
    std::size_t n_class2 = 0;
    std::size_t n_unlabeled = 0;
    double wall_ms = 0.0;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;          // metrics-major, thresholds within
};

// Splits the labeled cloud into a visible part and a hidden part whose labels
// are blanked.  The split is stratified per class and reproducible per seed.
struct HoldoutSplit {
    PointCloud visible;                   // retains labels
    PointCloud hidden;                    // labels forced to 0
    std::vector<int> hidden_truth;        // original labels of hidden points
};
HoldoutSplit stratified_holdout(const PointCloud& cloud, double fraction, std::uint64_t seed);

ExperimentResult run_experiment(const ExperimentSpec& spec);

// Results CSV round-trip.  The header is fixed; values survive a write/read
// cycle exactly (floats are emitted with shortest round-trip formatting).
extern const char* const kResultsHeader;
void write_results_csv(std::ostream& out, const ExperimentResult& result);
void write_results_csv(const std::string& path, const ExperimentResult& result);
ExperimentResult read_results_csv(std::istream& in);
ExperimentResult read_results_csv(const std::string& path);

} // namespace topolabel
