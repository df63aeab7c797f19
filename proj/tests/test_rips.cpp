#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "topolabel/error.hpp"
#include "topolabel/oracle.hpp"
#include "topolabel/random.hpp"
#include "topolabel/rips.hpp"

using namespace topolabel;

namespace {

PointCloud random_cloud(Rng& rng, std::size_t n, std::size_t dim) {
    PointCloud cloud;
    cloud.dim = dim;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < dim; ++k) cloud.coords.push_back(rng.uniform());
        cloud.ids.push_back(static_cast<int>(i));
    }
    return cloud;
}

DistanceMatrix unit_square() {
    PointCloud cloud;
    cloud.dim = 2;
    cloud.coords = {0, 0, 1, 0, 1, 1, 0, 1};
    cloud.ids = {0, 1, 2, 3};
    return pairwise_distances(cloud);
}

std::size_t count_dim(const Filtration& filt, int dim) {
    std::size_t c = 0;
    for (const Simplex& s : filt.simplices) c += s.dim() == dim;
    return c;
}

} // namespace

TEST_CASE("equilateral triangle: 3 vertices, 3 edges, 1 triangle") {
    DistanceMatrix dmat;
    dmat.n = 3;
    dmat.entries = {0, 1, 1, 1, 0, 1, 1, 1, 0};
    const Filtration filt = build_rips(dmat, 2);
    CHECK(count_dim(filt, 0) == 3);
    CHECK(count_dim(filt, 1) == 3);
    CHECK(count_dim(filt, 2) == 1);
    for (const Simplex& s : filt.simplices) CHECK(s.value == (s.dim() == 0 ? 0.0 : 1.0));
}

TEST_CASE("unit square corners at max_dim 1") {
    const Filtration filt = build_rips(unit_square(), 1);
    CHECK(count_dim(filt, 0) == 4);
    std::size_t at_one = 0, at_diag = 0;
    for (const Simplex& s : filt.simplices) {
        if (s.dim() != 1) continue;
        if (s.value == 1.0) ++at_one;
        if (s.value == std::sqrt(2.0)) ++at_diag;
    }
    CHECK(at_one == 4);
    CHECK(at_diag == 2);
    CHECK(count_dim(filt, 1) == 6);
}

TEST_CASE("random clouds match the exhaustive subset oracle") {
    Rng rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const PointCloud cloud = random_cloud(rng, 7, 2 + trial % 3);
        const DistanceMatrix dmat = pairwise_distances(cloud);
        for (int max_dim : {1, 2}) {
            const Filtration fast = build_rips(dmat, max_dim);
            const Filtration slow = exhaustive_rips(dmat, max_dim);
            CHECK(fast.simplices == slow.simplices);
            CHECK(fast.enclosing_radius == slow.enclosing_radius);
        }
    }
}

TEST_CASE("every facet appears earlier with a smaller-or-equal value") {
    Rng rng(32);
    const DistanceMatrix dmat = pairwise_distances(random_cloud(rng, 9, 3));
    const Filtration filt = build_rips(dmat, 3);

    std::map<std::vector<int>, std::size_t> position;
    for (std::size_t i = 0; i < filt.simplices.size(); ++i)
        position[filt.simplices[i].vertices] = i;

    for (std::size_t i = 0; i < filt.simplices.size(); ++i) {
        const Simplex& s = filt.simplices[i];
        if (s.dim() == 0) continue;
        for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
            std::vector<int> facet;
            for (std::size_t j = 0; j < s.vertices.size(); ++j)
                if (j != drop) facet.push_back(s.vertices[j]);
            const auto it = position.find(facet);
            REQUIRE(it != position.end());
            CHECK(it->second < i);
            CHECK(filt.simplices[it->second].value <= s.value);
        }
    }
}

TEST_CASE("filtration order is (value, dimension, lexicographic)") {
    Rng rng(33);
    const DistanceMatrix dmat = pairwise_distances(random_cloud(rng, 8, 2));
    const Filtration filt = build_rips(dmat, 2);
    for (std::size_t i = 1; i < filt.simplices.size(); ++i) {
        const Simplex& a = filt.simplices[i - 1];
        const Simplex& b = filt.simplices[i];
        const bool ordered =
            a.value < b.value ||
            (a.value == b.value &&
             (a.vertices.size() < b.vertices.size() ||
              (a.vertices.size() == b.vertices.size() && a.vertices < b.vertices)));
        CHECK(ordered);
    }
}

TEST_CASE("simplex values equal subset diameters") {
    Rng rng(34);
    const PointCloud cloud = random_cloud(rng, 8, 3);
    const DistanceMatrix dmat = pairwise_distances(cloud);
    const Filtration filt = build_rips(dmat, 2);
    for (const Simplex& s : filt.simplices) {
        double diam = 0.0;
        for (std::size_t i = 0; i < s.vertices.size(); ++i)
            for (std::size_t j = i + 1; j < s.vertices.size(); ++j)
                diam = std::max(diam, dmat(static_cast<std::size_t>(s.vertices[i]),
                                           static_cast<std::size_t>(s.vertices[j])));
        CHECK(s.value == diam);
    }
}

TEST_CASE("adding a point at fixed radius preserves existing simplices") {
    Rng rng(35);
    PointCloud cloud = random_cloud(rng, 8, 2);
    const DistanceMatrix dmat = pairwise_distances(cloud);
    const double radius = enclosing_radius(dmat);
    const Filtration before = build_rips(dmat, 2, radius);

    const double extra[] = {rng.uniform(), rng.uniform()};
    const PointCloud bigger = adjoin(cloud, extra);
    const Filtration after = build_rips(pairwise_distances(bigger), 2, radius);

    std::set<std::pair<std::vector<int>, double>> after_set;
    for (const Simplex& s : after.simplices) after_set.emplace(s.vertices, s.value);
    for (const Simplex& s : before.simplices)
        CHECK(after_set.count({s.vertices, s.value}) == 1);
}

TEST_CASE("enclosing radius is min over points of max distance") {
    Rng rng(36);
    const DistanceMatrix dmat = pairwise_distances(random_cloud(rng, 10, 3));
    double expected = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < dmat.n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < dmat.n; ++j) row = std::max(row, dmat(i, j));
        expected = std::min(expected, row);
    }
    CHECK(enclosing_radius(dmat) == expected);
}

TEST_CASE("radius bound excludes larger simplices") {
    const Filtration filt = build_rips(unit_square(), 2, 1.0);
    // Diagonals at sqrt(2) are out, so no triangles either.
    CHECK(count_dim(filt, 1) == 4);
    CHECK(count_dim(filt, 2) == 0);
    CHECK(filt.enclosing_radius == 1.0);
}

TEST_CASE("max_dim clamps to n-1") {
    DistanceMatrix dmat;
    dmat.n = 2;
    dmat.entries = {0, 1, 1, 0};
    const Filtration filt = build_rips(dmat, 5);
    CHECK(filt.max_dim == 1);
    CHECK(filt.simplices.size() == 3);
}

TEST_CASE("invalid arguments are rejected") {
    DistanceMatrix dmat;
    dmat.n = 2;
    dmat.entries = {0, 1, 1, 0};
    CHECK_THROWS_WITH_AS(build_rips(dmat, 1, -0.5), doctest::Contains("InvalidRadius"), Error);
    CHECK_THROWS_AS(build_rips(dmat, -1), Error);
    CHECK_THROWS_AS(exhaustive_rips(dmat, 1, -0.5), Error);
}

TEST_CASE("filtration debug export lists one simplex per line") {
    DistanceMatrix dmat;
    dmat.n = 2;
    dmat.entries = {0, 0.5, 0.5, 0};
    std::ostringstream out;
    write_filtration(out, build_rips(dmat, 1));
    CHECK(out.str() == "0 0 0\n0 1 0\n1 0 1 0.5\n");
}
