#include "topolabel/annotator.hpp"

#include "topolabel/error.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace topolabel {

const char* outcome_name(Outcome o) {
    switch (o) {
    case Outcome::Class1: return "1";
    case Outcome::Class2: return "2";
    case Outcome::Unlabeled: return "none";
    }
    return "none";
}

const char* tie_policy_name(TiePolicy p) {
    return p == TiePolicy::Unlabeled ? "unlabeled" : "class1";
}

TiePolicy parse_tie_policy(const std::string& name) {
    if (name == "unlabeled") return TiePolicy::Unlabeled;
    if (name == "class1") return TiePolicy::Class1;
    throw Error(Errc::InvalidArgument, "unknown tie policy '" + name + "'");
}

Outcome decide(double d1, double d2, double threshold, TiePolicy tie_policy) {
    if (threshold != 0.0 && std::min(d1, d2) > threshold) return Outcome::Unlabeled;
    if (d1 == d2) return tie_policy == TiePolicy::Class1 ? Outcome::Class1 : Outcome::Unlabeled;
    return d1 < d2 ? Outcome::Class1 : Outcome::Class2;
}

namespace {

// Distance matrix of cloud + one extra point, reusing the cached base
// matrix; only the new row/column is computed.
DistanceMatrix adjoin_distances(const DistanceMatrix& base, const PointCloud& cloud,
                                std::span<const double> point) {
    const std::size_t n = base.n;
    DistanceMatrix out;
    out.n = n + 1;
    out.entries.assign((n + 1) * (n + 1), 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = base(i, j);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        auto p = cloud.point(i);
        for (std::size_t k = 0; k < p.size(); ++k) {
            const double d = p[k] - point[k];
            s += d * d;
        }
        const double dist = std::sqrt(s);
        out.at(i, n) = dist;
        out.at(n, i) = dist;
    }
    return out;
}

PersistenceDiagram baseline_diagram(const DistanceMatrix& dmat, const AnnotatorConfig& cfg) {
    const Filtration filt = build_rips(dmat, cfg.max_homology_dim + 1);
    return finitize(compute_persistence(filt), cfg.essential_policy);
}

} // namespace

Annotator::Annotator(PointCloud class1, PointCloud class2, AnnotatorConfig config)
    : config_(std::move(config)), class1_(std::move(class1)), class2_(std::move(class2)) {
    validate(class1_);
    validate(class2_);
    if (class1_.size() < 2 || class2_.size() < 2)
        throw Error(Errc::ClassTooSmall, "each class needs at least 2 points");
    if (class1_.dim != class2_.dim)
        throw Error(Errc::DimensionMismatch, "class clouds have different dimensions");
    if (config_.threshold < 0.0 || std::isnan(config_.threshold))
        throw Error(Errc::InvalidArgument, "threshold must be >= 0");
    if (config_.max_homology_dim < 0)
        throw Error(Errc::InvalidArgument, "max homology dimension must be >= 0");

    dmat1_ = pairwise_distances(class1_);
    dmat2_ = pairwise_distances(class2_);
    base1_ = baseline_diagram(dmat1_, config_);
    base2_ = baseline_diagram(dmat2_, config_);
}

PointDistances Annotator::distances(std::span<const double> point,
                                    std::span<const DiagramMetric> metrics) const {
    if (point.size() != class1_.dim)
        throw Error(Errc::DimensionMismatch,
                    "point has dimension " + std::to_string(point.size()) + ", classes have " +
                        std::to_string(class1_.dim));

    const DistanceMatrix aug1 = adjoin_distances(dmat1_, class1_, point);
    const DistanceMatrix aug2 = adjoin_distances(dmat2_, class2_, point);
    const PersistenceDiagram diag1 = baseline_diagram(aug1, config_);
    const PersistenceDiagram diag2 = baseline_diagram(aug2, config_);

    PointDistances out;
    out.d1.reserve(metrics.size());
    out.d2.reserve(metrics.size());
    for (const DiagramMetric& metric : metrics) {
        out.d1.push_back(diagram_distance(base1_, diag1, metric));
        out.d2.push_back(diagram_distance(base2_, diag2, metric));
    }
    return out;
}

std::vector<PointDistances> Annotator::distances(const PointCloud& unlabeled,
                                                 std::span<const DiagramMetric> metrics) const {
    const std::size_t n = unlabeled.size();
    std::vector<PointDistances> out(n);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < n; ++i) {
        try {
            out[i] = distances(unlabeled.point(i), metrics);
        } catch (const std::exception& e) {
            out[i].error = e.what();
        }
    }
    return out;
}

LabelDecision Annotator::classify(std::span<const double> point, int point_id) const {
    const DiagramMetric metric[] = {config_.metric};
    const PointDistances d = distances(point, metric);
    LabelDecision decision;
    decision.point_id = point_id;
    decision.d1 = d.d1[0];
    decision.d2 = d.d2[0];
    decision.outcome = decide(decision.d1, decision.d2, config_.threshold, config_.tie_policy);
    return decision;
}

std::vector<LabelDecision> Annotator::annotate_serial(const PointCloud& unlabeled) const {
    std::vector<LabelDecision> out(unlabeled.size());
    for (std::size_t i = 0; i < unlabeled.size(); ++i) {
        try {
            out[i] = classify(unlabeled.point(i), unlabeled.ids[i]);
        } catch (const std::exception& e) {
            out[i].point_id = unlabeled.ids[i];
            out[i].outcome = Outcome::Unlabeled;
            out[i].error = e.what();
        }
    }
    return out;
}

std::vector<LabelDecision> Annotator::annotate(const PointCloud& unlabeled) const {
    const std::size_t n = unlabeled.size();
    std::vector<LabelDecision> out(n);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < n; ++i) {
        try {
            out[i] = classify(unlabeled.point(i), unlabeled.ids[i]);
        } catch (const std::exception& e) {
            out[i].point_id = unlabeled.ids[i];
            out[i].outcome = Outcome::Unlabeled;
            out[i].error = e.what();
        }
    }
    return out;
}

LabelDecision classify_point(const PointCloud& class1, const PointCloud& class2,
                             std::span<const double> point, const AnnotatorConfig& config) {
    return Annotator(class1, class2, config).classify(point);
}

std::vector<LabelDecision> annotate_set(const PointCloud& class1, const PointCloud& class2,
                                        const PointCloud& unlabeled,
                                        const AnnotatorConfig& config) {
    if (unlabeled.size() == 0) return {};
    return Annotator(class1, class2, config).annotate(unlabeled);
}

std::vector<SweepCell> threshold_sweep(const PointCloud& class1, const PointCloud& class2,
                                       const PointCloud& unlabeled,
                                       std::span<const double> thresholds,
                                       std::span<const DiagramMetric> metrics,
                                       const AnnotatorConfig& config) {
    const Annotator annotator(class1, class2, config);
    std::vector<PointDistances> dists;
    if (unlabeled.size() > 0) dists = annotator.distances(unlabeled, metrics);

    std::vector<SweepCell> cells;
    cells.reserve(metrics.size() * thresholds.size());
    for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
        for (double t : thresholds) {
            SweepCell cell;
            cell.metric = metrics[mi];
            cell.threshold = t;
            cell.outcomes.reserve(dists.size());
            for (const PointDistances& pd : dists) {
                Outcome o = Outcome::Unlabeled;
                if (pd.error.empty())
                    o = decide(pd.d1[mi], pd.d2[mi], t, config.tie_policy);
                cell.outcomes.push_back(o);
                if (o == Outcome::Class1)
                    ++cell.n_class1;
                else if (o == Outcome::Class2)
                    ++cell.n_class2;
                else
                    ++cell.n_unlabeled;
            }
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

} // namespace topolabel
