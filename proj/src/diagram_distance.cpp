#include "topolabel/diagram_distance.hpp"

#include "topolabel/assignment.hpp"
#include "topolabel/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace topolabel {

const char* metric_kind_name(MetricKind kind) {
    return kind == MetricKind::Bottleneck ? "bottleneck" : "wasserstein";
}

MetricKind parse_metric_kind(const std::string& name) {
    if (name == "bottleneck") return MetricKind::Bottleneck;
    if (name == "wasserstein") return MetricKind::Wasserstein;
    throw Error(Errc::InvalidArgument, "unknown metric '" + name + "'");
}

const char* aggregation_name(DimAggregation agg) {
    switch (agg) {
    case DimAggregation::Max: return "max";
    case DimAggregation::Sum: return "sum";
    case DimAggregation::Single: return "single";
    }
    return "max";
}

DimAggregation parse_aggregation(const std::string& name) {
    if (name == "max") return DimAggregation::Max;
    if (name == "sum") return DimAggregation::Sum;
    if (name == "single") return DimAggregation::Single;
    throw Error(Errc::InvalidArgument, "unknown aggregation '" + name + "'");
}

double linf_cost(const PersistencePoint& a, const PersistencePoint& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_cost(const PersistencePoint& p) { return (p.death - p.birth) / 2.0; }

namespace {

void require_finite(std::span<const PersistencePoint> d) {
    for (const auto& p : d)
        if (!std::isfinite(p.birth) || !std::isfinite(p.death))
            throw Error(Errc::InfiniteCoordinate,
                        "diagram contains an infinite coordinate; finitize first");
}

// Perfect matching within cost bound c on the diagonal-augmented
// bipartite graph. Left = d1 points + one slot per d2 point, right =
// d2 points + one slot per d1 point; slot-slot edges are free.
bool feasible(std::span<const PersistencePoint> d1, std::span<const PersistencePoint> d2, double c,
              BipartiteMatcher& matcher) {
    const std::size_t n = d1.size(), m = d2.size();
    matcher.clear_edges();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j)
            if (linf_cost(d1[i], d2[j]) <= c) matcher.add_edge(i, j);
        if (diagonal_cost(d1[i]) <= c) matcher.add_edge(i, m + i);
    }
    for (std::size_t k = 0; k < m; ++k) {
        if (diagonal_cost(d2[k]) <= c) matcher.add_edge(n + k, k);
        for (std::size_t l = 0; l < n; ++l) matcher.add_edge(n + k, m + l);
    }
    return matcher.solve() == n + m;
}

Matching extract_matching(const BipartiteMatcher& matcher, std::size_t n, std::size_t m,
                          double distance) {
    Matching match;
    match.cost = distance;
    const auto& left = matcher.match_of_left();
    for (std::size_t u = 0; u < n + m; ++u) {
        const int v = left[u];
        const bool left_real = u < n, right_real = v >= 0 && v < static_cast<int>(m);
        if (left_real && right_real)
            match.pairs.push_back({static_cast<int>(u), v});
        else if (left_real)
            match.pairs.push_back({static_cast<int>(u), -1});
        else if (right_real)
            match.pairs.push_back({-1, v});
    }
    return match;
}

} // namespace

std::pair<double, Matching> bottleneck(std::span<const PersistencePoint> d1,
                                       std::span<const PersistencePoint> d2) {
    require_finite(d1);
    require_finite(d2);
    const std::size_t n = d1.size(), m = d2.size();
    if (n == 0 && m == 0) return {0.0, {}};

    std::vector<double> candidates;
    candidates.reserve(n * m + n + m + 1);
    candidates.push_back(0.0);
    for (const auto& p : d1) candidates.push_back(diagonal_cost(p));
    for (const auto& q : d2) candidates.push_back(diagonal_cost(q));
    for (const auto& p : d1)
        for (const auto& q : d2) candidates.push_back(linf_cost(p, q));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    BipartiteMatcher matcher(n + m, m + n);
    std::size_t lo = 0, hi = candidates.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (feasible(d1, d2, candidates[mid], matcher))
            hi = mid;
        else
            lo = mid + 1;
    }
    const double dist = candidates[lo];
    feasible(d1, d2, dist, matcher); // rebuild the witness at the optimum
    return {dist, extract_matching(matcher, n, m, dist)};
}

std::pair<double, Matching> wasserstein(std::span<const PersistencePoint> d1,
                                        std::span<const PersistencePoint> d2, double q) {
    if (!(q >= 1.0) || !std::isfinite(q))
        throw Error(Errc::InvalidOrder, "Wasserstein order q must be finite and >= 1");
    require_finite(d1);
    require_finite(d2);
    const std::size_t n = d1.size(), m = d2.size();
    if (n == 0 && m == 0) return {0.0, {}};

    const std::size_t size = n + m;
    std::vector<std::vector<double>> cost(size, std::vector<double>(size, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) cost[i][j] = std::pow(linf_cost(d1[i], d2[j]), q);
        const double dc = std::pow(diagonal_cost(d1[i]), q);
        for (std::size_t k = 0; k < n; ++k) cost[i][m + k] = dc;
    }
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t j = 0; j < m; ++j) cost[n + k][j] = std::pow(diagonal_cost(d2[j]), q);

    std::vector<int> assignment;
    const double total = solve_assignment(cost, assignment);
    const double dist = std::pow(std::max(total, 0.0), 1.0 / q);

    Matching match;
    match.cost = dist;
    for (std::size_t i = 0; i < size; ++i) {
        const int j = assignment[i];
        const bool left_real = i < n, right_real = j >= 0 && j < static_cast<int>(m);
        if (left_real && right_real)
            match.pairs.push_back({static_cast<int>(i), j});
        else if (left_real)
            match.pairs.push_back({static_cast<int>(i), -1});
        else if (right_real)
            match.pairs.push_back({-1, j});
    }
    return {dist, match};
}

double diagram_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                        const DiagramMetric& metric) {
    std::map<int, std::pair<std::vector<PersistencePoint>, std::vector<PersistencePoint>>>
        by_degree;
    for (const auto& p : d1.points) by_degree[p.dim].first.push_back(p);
    for (const auto& p : d2.points) by_degree[p.dim].second.push_back(p);

    if (metric.aggregation == DimAggregation::Single) {
        const auto it = by_degree.find(metric.single_dim);
        if (it == by_degree.end()) return 0.0;
        const auto& [a, b] = it->second;
        return metric.kind == MetricKind::Bottleneck ? bottleneck(a, b).first
                                                     : wasserstein(a, b, metric.q).first;
    }

    double agg = 0.0;
    for (const auto& [deg, pair] : by_degree) {
        const auto& [a, b] = pair;
        const double v = metric.kind == MetricKind::Bottleneck ? bottleneck(a, b).first
                                                               : wasserstein(a, b, metric.q).first;
        agg = metric.aggregation == DimAggregation::Max ? std::max(agg, v) : agg + v;
    }
    return agg;
}

} // namespace topolabel
