#pragma once

#include "topolabel/point_cloud.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace topolabel {

/// One cell of a Vietoris-Rips filtration. Vertices are point positions
/// (0..n-1) in strictly increasing order; value is the diameter (max
/// pairwise distance), 0 for vertices.
struct Simplex {
    std::vector<int> vertices;
    double value = 0.0;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

bool operator==(const Simplex& a, const Simplex& b);

/// Simplices in filtration order: ascending by (value, dimension,
/// lexicographic vertices). The dimension tiebreak puts every face
/// before its cofaces, so the order is a valid filtration and
/// persistence pairings are reproducible bit-for-bit.
struct Filtration {
    std::vector<Simplex> simplices;
    int max_dim = 0;               // maximum simplex dimension included
    double enclosing_radius = 0.0; // effective diameter bound used
};

/// min over points of the max distance to any other point; Rips homology
/// in positive degrees is trivial past this radius.
double enclosing_radius(const DistanceMatrix& dmat);

/// Builds the Rips filtration with every simplex on <= max_dim+1
/// vertices whose diameter is <= the effective radius. max_radius
/// defaults to the enclosing radius; max_dim is clamped to n-1.
///
/// Note max_dim here is the maximum *simplex* dimension. To report
/// homology up to degree k, build with max_dim = k+1 (deaths in degree k
/// require (k+1)-simplices).
Filtration build_rips(const DistanceMatrix& dmat, int max_dim,
                      std::optional<double> max_radius = std::nullopt);

/// Debug export, one simplex per line: "dim v0 v1 ... vk value".
void write_filtration(std::ostream& os, const Filtration& filt);

} // namespace topolabel
