#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "topolabel/csv.hpp"
#include "topolabel/error.hpp"
#include "topolabel/point_cloud.hpp"
#include "topolabel/random.hpp"

using namespace topolabel;

namespace {

PointCloud make_cloud(std::size_t dim, std::initializer_list<double> coords) {
    PointCloud cloud;
    cloud.dim = dim;
    cloud.coords = coords;
    for (std::size_t i = 0; i < cloud.coords.size() / dim; ++i)
        cloud.ids.push_back(static_cast<int>(i));
    return cloud;
}

PointCloud random_cloud(Rng& rng, std::size_t n, std::size_t dim) {
    PointCloud cloud;
    cloud.dim = dim;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < dim; ++k) cloud.coords.push_back(rng.uniform(-3.0, 3.0));
        cloud.ids.push_back(static_cast<int>(i));
    }
    return cloud;
}

} // namespace

TEST_CASE("min-max maps feature endpoints to 0 and 1") {
    const PointCloud cloud = make_cloud(1, {2.0, 4.0, 6.0});
    const PointCloud scaled = normalize(cloud, Normalization::MinMax);
    REQUIRE(scaled.coords.size() == 3);
    CHECK(scaled.coords[0] == 0.0);
    CHECK(scaled.coords[1] == 0.5);
    CHECK(scaled.coords[2] == 1.0);
    CHECK(scaled.ids == cloud.ids);
}

TEST_CASE("min-max maps constant features to 0") {
    const PointCloud scaled = normalize(make_cloud(1, {5.0, 5.0, 5.0}), Normalization::MinMax);
    for (double c : scaled.coords) CHECK(c == 0.0);
}

TEST_CASE("min-max output lies in [0,1] per feature") {
    Rng rng(11);
    const PointCloud scaled = normalize(random_cloud(rng, 40, 5), Normalization::MinMax);
    for (double c : scaled.coords) {
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
    }
}

TEST_CASE("z-score centers and scales each feature") {
    Rng rng(12);
    const PointCloud scaled = normalize(random_cloud(rng, 200, 3), Normalization::ZScore);
    for (std::size_t k = 0; k < scaled.dim; ++k) {
        double mean = 0.0, var = 0.0;
        for (std::size_t i = 0; i < scaled.size(); ++i) mean += scaled.point(i)[k];
        mean /= static_cast<double>(scaled.size());
        for (std::size_t i = 0; i < scaled.size(); ++i) {
            const double d = scaled.point(i)[k] - mean;
            var += d * d;
        }
        var /= static_cast<double>(scaled.size());
        CHECK(std::abs(mean) < 1e-12);
        CHECK(std::abs(var - 1.0) < 1e-9);
    }
}

TEST_CASE("normalize rejects an empty cloud") {
    PointCloud empty;
    empty.dim = 2;
    CHECK_THROWS_WITH_AS(normalize(empty, Normalization::MinMax),
                         doctest::Contains("EmptyInput"), Error);
}

TEST_CASE("3-4-5 triangle distance") {
    const PointCloud cloud = make_cloud(2, {0.0, 0.0, 3.0, 4.0});
    const DistanceMatrix dmat = pairwise_distances(cloud);
    CHECK(dmat(0, 1) == 5.0);
    CHECK(dmat(1, 0) == 5.0);
    CHECK(dmat(0, 0) == 0.0);
}

TEST_CASE("unit right triangle distances") {
    const PointCloud cloud = make_cloud(2, {0.0, 0.0, 1.0, 0.0, 0.0, 1.0});
    const DistanceMatrix dmat = pairwise_distances(cloud);
    CHECK(dmat(0, 1) == 1.0);
    CHECK(dmat(0, 2) == 1.0);
    CHECK(dmat(1, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("single point gives a 1x1 zero matrix") {
    const DistanceMatrix dmat = pairwise_distances(make_cloud(3, {1.0, 2.0, 3.0}));
    REQUIRE(dmat.n == 1);
    CHECK(dmat(0, 0) == 0.0);
}

TEST_CASE("distance matrix equals an independent double-loop recomputation") {
    Rng rng(21);
    const PointCloud cloud = random_cloud(rng, 10, 4);
    const DistanceMatrix dmat = pairwise_distances(cloud);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        for (std::size_t j = 0; j < cloud.size(); ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < cloud.dim; ++k) {
                const double d = cloud.coords[i * cloud.dim + k] - cloud.coords[j * cloud.dim + k];
                s += d * d;
            }
            CHECK(dmat(i, j) == std::sqrt(s));
        }
    }
}

TEST_CASE("parallel and serial distance kernels agree exactly") {
    Rng rng(22);
    for (std::size_t n : {1u, 2u, 17u, 64u, 201u}) {
        const PointCloud cloud = random_cloud(rng, n, 3);
        const DistanceMatrix a = pairwise_distances(cloud);
        const DistanceMatrix b = pairwise_distances_serial(cloud);
        REQUIRE(a.n == b.n);
        CHECK(a.entries == b.entries);
    }
}

TEST_CASE("distance matrix satisfies the triangle inequality") {
    Rng rng(23);
    const PointCloud cloud = random_cloud(rng, 20, 3);
    const DistanceMatrix dmat = pairwise_distances(cloud);
    for (std::size_t i = 0; i < cloud.size(); ++i)
        for (std::size_t j = 0; j < cloud.size(); ++j)
            for (std::size_t k = 0; k < cloud.size(); ++k)
                CHECK(dmat(i, j) <= dmat(i, k) + dmat(k, j) + 1e-12);
}

TEST_CASE("pairwise distances are permutation-equivariant") {
    Rng rng(24);
    const PointCloud cloud = random_cloud(rng, 12, 3);
    std::vector<std::size_t> perm(cloud.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    rng.shuffle(perm);

    const PointCloud permuted = subset(cloud, perm);
    const DistanceMatrix base = pairwise_distances(cloud);
    const DistanceMatrix shuffled = pairwise_distances(permuted);
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = 0; j < perm.size(); ++j)
            CHECK(shuffled(i, j) == base(perm[i], perm[j]));
}

TEST_CASE("cloud validation rejects bad invariants") {
    PointCloud nan_cloud = make_cloud(2, {0.0, 1.0, 2.0, 3.0});
    nan_cloud.coords[1] = std::nan("");
    CHECK_THROWS_AS(validate(nan_cloud), Error);

    PointCloud dup = make_cloud(2, {0.0, 1.0, 2.0, 3.0});
    dup.ids = {3, 3};
    CHECK_THROWS_WITH_AS(validate(dup), doctest::Contains("duplicate"), Error);

    PointCloud ragged = make_cloud(2, {0.0, 1.0, 2.0, 3.0});
    ragged.coords.pop_back();
    CHECK_THROWS_AS(validate(ragged), Error);
}

TEST_CASE("subset keeps ids and labels") {
    PointCloud cloud = make_cloud(1, {0.0, 1.0, 2.0, 3.0});
    cloud.labels = {1, 2, 0, 1};
    const std::vector<std::size_t> keep{1, 3};
    const PointCloud sub = subset(cloud, keep);
    REQUIRE(sub.size() == 2);
    CHECK(sub.ids == std::vector<int>{1, 3});
    CHECK(sub.labels == std::vector<int>{2, 1});
    CHECK(sub.coords == std::vector<double>{1.0, 3.0});
}

TEST_CASE("adjoin appends with a fresh id") {
    PointCloud cloud = make_cloud(2, {0.0, 0.0, 1.0, 1.0});
    cloud.ids = {5, 9};
    const double extra[] = {2.0, 2.0};
    const PointCloud bigger = adjoin(cloud, extra);
    REQUIRE(bigger.size() == 3);
    CHECK(bigger.ids == std::vector<int>{5, 9, 10});
    CHECK(bigger.point(2)[0] == 2.0);
}

TEST_CASE("split_by_label partitions by class") {
    PointCloud cloud = make_cloud(1, {0.0, 1.0, 2.0, 3.0, 4.0});
    cloud.labels = {1, 2, 0, 1, 0};
    const LabelSplit split = split_by_label(cloud);
    CHECK(split.class1.ids == std::vector<int>{0, 3});
    CHECK(split.class2.ids == std::vector<int>{1});
    CHECK(split.unlabeled.ids == std::vector<int>{2, 4});
}

TEST_CASE("csv ingestion handles labels and preserves cell text") {
    std::istringstream in("x,y,label\n0.10,0,1\n1,0,2\n0.5,0.5,\n");
    const CsvTable table = read_csv(in, "test.csv");
    REQUIRE(table.rows.size() == 3);
    CHECK(table.rows[0][0] == "0.10"); // verbatim, not reformatted

    const PointCloud cloud = table_to_cloud(table);
    REQUIRE(cloud.size() == 3);
    CHECK(cloud.dim == 2);
    CHECK(cloud.labels == std::vector<int>{1, 2, 0});
    CHECK(cloud.ids == std::vector<int>{0, 1, 2});
    CHECK(cloud.coords[0] == 0.10);
}

TEST_CASE("csv without the label column is all features") {
    std::istringstream in("a,b,c\n1,2,3\n4,5,6\n");
    const PointCloud cloud = table_to_cloud(read_csv(in, "test.csv"));
    CHECK(cloud.dim == 3);
    CHECK_FALSE(cloud.has_labels());
}

TEST_CASE("csv errors carry row and column positions") {
    std::istringstream bad_cell("x,label\nabc,1\n");
    CHECK_THROWS_WITH_AS(table_to_cloud(read_csv(bad_cell, "t.csv")),
                         doctest::Contains("row 2"), Error);

    std::istringstream ragged("x,y\n1\n");
    CHECK_THROWS_WITH_AS(read_csv(ragged, "t.csv"), doctest::Contains("IngestError"), Error);

    std::istringstream empty("");
    CHECK_THROWS_AS(read_csv(empty, "t.csv"), Error);

    std::istringstream bad_label("x,label\n1,7\n");
    CHECK_THROWS_AS(table_to_cloud(read_csv(bad_label, "t.csv")), Error);

    std::istringstream inf_cell("x,label\ninf,1\n");
    CHECK_THROWS_AS(table_to_cloud(read_csv(inf_cell, "t.csv")), Error);
}

TEST_CASE("label column is only special in final position") {
    // A column named "label" that is not last stays a feature.
    std::istringstream in("label,x\n1,2\n3,4\n");
    const PointCloud cloud = table_to_cloud(read_csv(in, "t.csv"));
    CHECK(cloud.dim == 2);
    CHECK_FALSE(cloud.has_labels());
}
