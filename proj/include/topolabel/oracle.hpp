#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "topolabel/persistence.hpp"
#include "topolabel/point_cloud.hpp"
#include "topolabel/random.hpp"
#include "topolabel/rips.hpp"

namespace topolabel {

// Independent cross-check implementations. Each one recomputes a result
// of the main pipeline by the most direct method available — exhaustive
// enumeration, dense linear algebra, factorial search — sharing no code
// with the implementation it checks. Exponential cost throughout; only
// for small inputs.

/// Rips filtration by brute force: every vertex subset of size
/// <= max_dim+1 whose diameter fits the radius, sorted the same way as
/// build_rips.
Filtration exhaustive_rips(const DistanceMatrix& dmat, int max_dim,
                           std::optional<double> max_radius = std::nullopt);

/// Betti numbers beta_0..beta_{up_to} of the subcomplex at the given
/// radius, from ranks of dense GF(2) boundary matrices. Requires
/// up_to <= filt.max_dim - 1 (beta_k needs the (k+1)-boundaries).
std::vector<std::size_t> betti_numbers(const Filtration& filt, double radius, int up_to);

/// Number of degree-dim diagram points alive at the radius
/// (birth <= radius < death). Works on unfinitized diagrams.
std::size_t alive_at(const PersistenceDiagram& diag, int dim, double radius);

/// Distances by enumerating every matching with diagonal completion.
/// Factorial in the smaller diagram; keep sizes <= ~7.
double brute_force_bottleneck(std::span<const PersistencePoint> d1,
                              std::span<const PersistencePoint> d2);
double brute_force_wasserstein(std::span<const PersistencePoint> d1,
                               std::span<const PersistencePoint> d2, double q);

/// Random finite diagram of up to max_points points in one degree.
std::vector<PersistencePoint> random_diagram(Rng& rng, std::size_t max_points, int dim);

/// Runs every cross-check on seeded random inputs of size n, printing
/// one line per check group. Returns the number of failed checks.
int run_oracle_suite(std::size_t n, std::uint64_t seed, std::ostream& out);

} // namespace topolabel
