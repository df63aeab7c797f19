#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace topolabel {

/// Finite set of points in R^dim with stable integer ids and optional
/// class labels (0 = unlabeled, 1/2 = class). Coordinates are stored
/// row-major; all points share the same dimension.
struct PointCloud {
    std::size_t dim = 0;
    std::vector<double> coords; // size() * dim, row-major
    std::vector<int> ids;       // unique, stable across subsetting
    std::vector<int> labels;    // empty, or one entry per point in {0,1,2}

    std::size_t size() const { return ids.size(); }
    bool has_labels() const { return !labels.empty(); }

    std::span<const double> point(std::size_t i) const {
        return {coords.data() + i * dim, dim};
    }
};

/// Symmetric pairwise-distance matrix with zero diagonal, indexed by
/// point position (0..n-1), dense row-major storage.
struct DistanceMatrix {
    std::size_t n = 0;
    std::vector<double> entries; // n * n

    double operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
    double& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }
};

enum class Normalization { None, MinMax, ZScore };

const char* normalization_name(Normalization mode);
Normalization parse_normalization(const std::string& name);

/// Throws Error on violated invariants (empty cloud, ragged coords,
/// NaN/Inf coordinates, duplicate ids).
void validate(const PointCloud& cloud);

/// Per-feature rescaling computed over the whole given cloud. Min-max
/// maps each feature to [0,1]; constant features map to 0. Callers that
/// later split a dataset into classes must normalize the union first so
/// distances stay commensurable across subsets.
PointCloud normalize(const PointCloud& cloud, Normalization mode);

/// Euclidean pairwise distances. The default entry point parallelizes
/// over rows with OpenMP when available; the _serial variant is the
/// reference implementation and always produces identical output.
DistanceMatrix pairwise_distances(const PointCloud& cloud);
DistanceMatrix pairwise_distances_serial(const PointCloud& cloud);

void validate(const DistanceMatrix& dmat);

/// New cloud containing the selected positions, ids preserved.
PointCloud subset(const PointCloud& cloud, std::span<const std::size_t> positions);

/// Appends one point (fresh id = max id + 1). Original positions keep
/// their coordinates and ids.
PointCloud adjoin(const PointCloud& cloud, std::span<const double> point);

struct LabelSplit {
    PointCloud class1;
    PointCloud class2;
    PointCloud unlabeled;
};

LabelSplit split_by_label(const PointCloud& cloud);

} // namespace topolabel
