#include "topolabel/point_cloud.hpp"

#include "topolabel/error.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace topolabel {

const char* normalization_name(Normalization mode) {
    switch (mode) {
    case Normalization::None: return "none";
    case Normalization::MinMax: return "min-max";
    case Normalization::ZScore: return "z-score";
    }
    return "none";
}

Normalization parse_normalization(const std::string& name) {
    if (name == "none") return Normalization::None;
    if (name == "min-max" || name == "minmax") return Normalization::MinMax;
    if (name == "z-score" || name == "zscore") return Normalization::ZScore;
    throw Error(Errc::InvalidArgument, "unknown normalization mode '" + name + "'");
}

void validate(const PointCloud& cloud) {
    if (cloud.size() == 0) throw Error(Errc::EmptyInput, "point cloud is empty");
    if (cloud.dim == 0) throw Error(Errc::InvalidArgument, "point dimension must be positive");
    if (cloud.coords.size() != cloud.size() * cloud.dim)
        throw Error(Errc::InvalidArgument, "coordinate buffer does not match size*dim");
    if (!cloud.labels.empty() && cloud.labels.size() != cloud.size())
        throw Error(Errc::InvalidArgument, "label count does not match point count");
    for (double c : cloud.coords)
        if (!std::isfinite(c)) throw Error(Errc::InvalidArgument, "non-finite coordinate");
    std::unordered_set<int> seen;
    for (int id : cloud.ids)
        if (!seen.insert(id).second)
            throw Error(Errc::InvalidArgument, "duplicate point id " + std::to_string(id));
}

PointCloud normalize(const PointCloud& cloud, Normalization mode) {
    validate(cloud);
    if (mode == Normalization::None) return cloud;

    const std::size_t n = cloud.size(), d = cloud.dim;
    PointCloud out = cloud;

    for (std::size_t f = 0; f < d; ++f) {
        if (mode == Normalization::MinMax) {
            double lo = cloud.coords[f], hi = cloud.coords[f];
            for (std::size_t i = 1; i < n; ++i) {
                double v = cloud.coords[i * d + f];
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            const double range = hi - lo;
            for (std::size_t i = 0; i < n; ++i) {
                double& v = out.coords[i * d + f];
                v = range > 0.0 ? (v - lo) / range : 0.0;
            }
        } else { // ZScore, population std
            double mean = 0.0;
            for (std::size_t i = 0; i < n; ++i) mean += cloud.coords[i * d + f];
            mean /= static_cast<double>(n);
            double var = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double dv = cloud.coords[i * d + f] - mean;
                var += dv * dv;
            }
            const double sd = std::sqrt(var / static_cast<double>(n));
            for (std::size_t i = 0; i < n; ++i) {
                double& v = out.coords[i * d + f];
                v = sd > 0.0 ? (v - mean) / sd : 0.0;
            }
        }
    }
    return out;
}

namespace {

double euclidean(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

} // namespace

DistanceMatrix pairwise_distances_serial(const PointCloud& cloud) {
    validate(cloud);
    const std::size_t n = cloud.size();
    DistanceMatrix m;
    m.n = n;
    m.entries.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = euclidean(cloud.point(i), cloud.point(j));
            m.at(i, j) = d;
            m.at(j, i) = d;
        }
    return m;
}

DistanceMatrix pairwise_distances(const PointCloud& cloud) {
    validate(cloud);
    const std::size_t n = cloud.size();
    DistanceMatrix m;
    m.n = n;
    m.entries.assign(n * n, 0.0);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = euclidean(cloud.point(i), cloud.point(j));
            m.at(i, j) = d;
            m.at(j, i) = d;
        }
    return m;
}

void validate(const DistanceMatrix& dmat) {
    const std::size_t n = dmat.n;
    if (dmat.entries.size() != n * n)
        throw Error(Errc::InvalidArgument, "distance matrix buffer does not match n*n");
    for (std::size_t i = 0; i < n; ++i) {
        if (dmat(i, i) != 0.0)
            throw Error(Errc::InvalidArgument, "distance matrix diagonal must be zero");
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = dmat(i, j);
            if (!std::isfinite(d) || d < 0.0)
                throw Error(Errc::InvalidArgument, "distance entries must be finite and >= 0");
            if (d != dmat(j, i))
                throw Error(Errc::InvalidArgument, "distance matrix must be symmetric");
        }
    }
}

PointCloud subset(const PointCloud& cloud, std::span<const std::size_t> positions) {
    PointCloud out;
    out.dim = cloud.dim;
    out.coords.reserve(positions.size() * cloud.dim);
    out.ids.reserve(positions.size());
    if (cloud.has_labels()) out.labels.reserve(positions.size());
    for (std::size_t p : positions) {
        auto pt = cloud.point(p);
        out.coords.insert(out.coords.end(), pt.begin(), pt.end());
        out.ids.push_back(cloud.ids[p]);
        if (cloud.has_labels()) out.labels.push_back(cloud.labels[p]);
    }
    return out;
}

PointCloud adjoin(const PointCloud& cloud, std::span<const double> point) {
    if (point.size() != cloud.dim)
        throw Error(Errc::DimensionMismatch,
                    "point has dimension " + std::to_string(point.size()) + ", cloud has " +
                        std::to_string(cloud.dim));
    PointCloud out = cloud;
    out.coords.insert(out.coords.end(), point.begin(), point.end());
    int next_id = 0;
    for (int id : cloud.ids) next_id = std::max(next_id, id + 1);
    out.ids.push_back(next_id);
    if (out.has_labels()) out.labels.push_back(0);
    return out;
}

LabelSplit split_by_label(const PointCloud& cloud) {
    validate(cloud);
    std::vector<std::size_t> c1, c2, un;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const int lab = cloud.has_labels() ? cloud.labels[i] : 0;
        if (lab == 1)
            c1.push_back(i);
        else if (lab == 2)
            c2.push_back(i);
        else
            un.push_back(i);
    }
    return {subset(cloud, c1), subset(cloud, c2), subset(cloud, un)};
}

} // namespace topolabel
