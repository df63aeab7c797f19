#pragma once

#include "topolabel/persistence.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace topolabel {

enum class MetricKind { Bottleneck, Wasserstein };
enum class DimAggregation { Max, Sum, Single };

/// Selector for the diagram distance: bottleneck or q-Wasserstein, plus
/// how per-degree distances are combined into one scalar.
struct DiagramMetric {
    MetricKind kind = MetricKind::Bottleneck;
    double q = 1.0; // Wasserstein order, >= 1
    DimAggregation aggregation = DimAggregation::Max;
    int single_dim = 0; // used when aggregation == Single
};

const char* metric_kind_name(MetricKind kind);
MetricKind parse_metric_kind(const std::string& name);
const char* aggregation_name(DimAggregation agg);
DimAggregation parse_aggregation(const std::string& name);

/// Witness matching: indices into the two input point spans, -1 marks
/// the diagonal. Every off-diagonal point appears exactly once; the
/// diagonal partner of (b, d) is its L-inf projection at cost (d-b)/2.
struct Matching {
    struct Pair {
        int index1 = -1;
        int index2 = -1;
    };
    std::vector<Pair> pairs;
    double cost = 0.0;
};

/// L-inf ground cost between two persistence points.
double linf_cost(const PersistencePoint& a, const PersistencePoint& b);
/// Cost of retiring a point to the diagonal: (death - birth) / 2.
double diagonal_cost(const PersistencePoint& p);

/// Bottleneck distance between two same-degree diagrams: min over
/// diagonal-augmented perfect matchings of the max pair cost. Exact:
/// binary search over candidate costs with a maximum-bipartite-matching
/// feasibility test. Throws InfiniteCoordinate on unfinitized input.
std::pair<double, Matching> bottleneck(std::span<const PersistencePoint> d1,
                                       std::span<const PersistencePoint> d2);

/// q-Wasserstein distance: (min over matchings of sum cost^q)^(1/q),
/// solved exactly as an (n+m)x(n+m) assignment problem. q >= 1.
std::pair<double, Matching> wasserstein(std::span<const PersistencePoint> d1,
                                        std::span<const PersistencePoint> d2, double q);

/// Per-degree distance over all degrees present in either diagram,
/// aggregated per metric.aggregation.
double diagram_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                        const DiagramMetric& metric);

} // namespace topolabel
