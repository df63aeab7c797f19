#pragma once

#include "topolabel/diagram_distance.hpp"
#include "topolabel/persistence.hpp"
#include "topolabel/point_cloud.hpp"

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace topolabel {

enum class Outcome { Class1, Class2, Unlabeled };

const char* outcome_name(Outcome o);

enum class TiePolicy { Unlabeled, Class1 };

const char* tie_policy_name(TiePolicy p);
TiePolicy parse_tie_policy(const std::string& name);

/// Decision for one unlabeled point: the two perturbation distances and
/// the resulting label. error is nonempty when the point could not be
/// classified (distances are NaN then).
struct LabelDecision {
    int point_id = -1;
    Outcome outcome = Outcome::Unlabeled;
    double d1 = std::numeric_limits<double>::quiet_NaN();
    double d2 = std::numeric_limits<double>::quiet_NaN();
    std::string error;
};

struct AnnotatorConfig {
    double threshold = 0.6;
    DiagramMetric metric;
    TiePolicy tie_policy = TiePolicy::Unlabeled;
    EssentialPolicy essential_policy = EssentialPolicy::CapAtEnclosingRadius;
    int max_homology_dim = 1; // diagrams cover degrees 0..max_homology_dim
};

/// The threshold rule alone, on already-computed distances. Labels when
/// min(d1, d2) <= threshold; both above threshold means Unlabeled; exact
/// ties fall to the tie policy. threshold == 0 disables the test
/// entirely and always returns the argmin (ties aside), so a 0.0 sweep
/// row labels every point instead of almost none.
Outcome decide(double d1, double d2, double threshold, TiePolicy tie_policy);

/// Distances d1/d2 of one point under several metrics, in metric order.
struct PointDistances {
    std::vector<double> d1;
    std::vector<double> d2;
    std::string error;
};

/// Holds the two labeled classes with their baseline diagrams computed
/// once; classification of each unlabeled point rebuilds only the two
/// point-adjoined filtrations. Immutable after construction, safe to
/// share across threads.
class Annotator {
public:
    /// Clouds must already be normalized over the union of all inputs.
    /// Each class needs >= 2 points and matching dimension.
    Annotator(PointCloud class1, PointCloud class2, AnnotatorConfig config);

    const AnnotatorConfig& config() const { return config_; }

    LabelDecision classify(std::span<const double> point, int point_id = -1) const;

    /// One decision per point, against the original classes only (single
    /// pass, no accretion). The default entry point parallelizes over
    /// points with OpenMP; annotate_serial is the reference loop. Both
    /// produce identical output in identical order.
    std::vector<LabelDecision> annotate(const PointCloud& unlabeled) const;
    std::vector<LabelDecision> annotate_serial(const PointCloud& unlabeled) const;

    /// d1/d2 of one point under each metric; the filtrations and
    /// diagrams are built once and reused across metrics.
    PointDistances distances(std::span<const double> point,
                             std::span<const DiagramMetric> metrics) const;

    /// Distances for every point of a cloud (OpenMP over points).
    std::vector<PointDistances> distances(const PointCloud& unlabeled,
                                          std::span<const DiagramMetric> metrics) const;

private:
    AnnotatorConfig config_;
    PointCloud class1_, class2_;
    DistanceMatrix dmat1_, dmat2_;
    PersistenceDiagram base1_, base2_;
};

LabelDecision classify_point(const PointCloud& class1, const PointCloud& class2,
                             std::span<const double> point, const AnnotatorConfig& config);

std::vector<LabelDecision> annotate_set(const PointCloud& class1, const PointCloud& class2,
                                        const PointCloud& unlabeled,
                                        const AnnotatorConfig& config);

/// One sweep cell: decision counts for a (metric, threshold) pair.
struct SweepCell {
    DiagramMetric metric;
    double threshold = 0.0;
    std::size_t n_class1 = 0;
    std::size_t n_class2 = 0;
    std::size_t n_unlabeled = 0;
    std::vector<Outcome> outcomes; // per point, in input order
};

/// Evaluates every (metric, threshold) combination. Per-point distances
/// are computed once per metric and shared across thresholds.
std::vector<SweepCell> threshold_sweep(const PointCloud& class1, const PointCloud& class2,
                                       const PointCloud& unlabeled,
                                       std::span<const double> thresholds,
                                       std::span<const DiagramMetric> metrics,
                                       const AnnotatorConfig& config);

} // namespace topolabel
