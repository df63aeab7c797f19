#pragma once

#include "topolabel/point_cloud.hpp"

#include <cstdint>

namespace topolabel {

/// Two isotropic Gaussian blobs in R^dim, class 1 centered at the
/// origin and class 2 at (separation, 0, ..., 0). Deterministic given
/// the seed. Used by tests and the benchmark as a ground-truth fixture.
PointCloud make_two_blobs(std::size_t n_per_class, std::size_t dim, double sigma,
                          double separation, std::uint64_t seed);

} // namespace topolabel
