#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "topolabel/annotator.hpp"
#include "topolabel/error.hpp"
#include "topolabel/random.hpp"
#include "topolabel/synthetic.hpp"

using namespace topolabel;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

PointCloud cloud_2d(std::initializer_list<double> coords) {
    PointCloud cloud;
    cloud.dim = 2;
    cloud.coords = coords;
    for (std::size_t i = 0; i < cloud.coords.size() / 2; ++i)
        cloud.ids.push_back(static_cast<int>(i));
    return cloud;
}

// Well-separated two-blob scenario, normalized over the union as the
// pipeline prescribes.
struct BlobFixture {
    PointCloud class1, class2, queries;
    std::vector<int> truth;

    explicit BlobFixture(std::size_t n_labeled = 20, std::size_t n_queries = 10,
                         double sigma = 0.3, std::uint64_t seed = 61) {
        PointCloud labeled = make_two_blobs(n_labeled, 2, sigma, 10.0, seed);
        PointCloud hidden = make_two_blobs(n_queries, 2, sigma, 10.0, seed + 1);
        // Normalize jointly: append, scale, then split back apart.
        PointCloud all = labeled;
        for (double c : hidden.coords) all.coords.push_back(c);
        for (std::size_t i = 0; i < hidden.size(); ++i) {
            all.ids.push_back(static_cast<int>(labeled.size() + i));
            all.labels.push_back(0);
        }
        all = normalize(all, Normalization::MinMax);

        std::vector<std::size_t> head(labeled.size()), tail(hidden.size());
        for (std::size_t i = 0; i < head.size(); ++i) head[i] = i;
        for (std::size_t i = 0; i < tail.size(); ++i) tail[i] = labeled.size() + i;
        const LabelSplit split = split_by_label(subset(all, head));
        class1 = split.class1;
        class2 = split.class2;
        queries = subset(all, tail);
        queries.labels.clear();
        truth = hidden.labels;
    }
};

} // namespace

TEST_CASE("decision rule reproduces the worked example") {
    CHECK(decide(0.1285, 0.4958, 0.6, TiePolicy::Unlabeled) == Outcome::Class1);
    CHECK(decide(0.1285, 0.4958, 0.1, TiePolicy::Unlabeled) == Outcome::Unlabeled);
    CHECK(decide(0.4958, 0.1285, 0.6, TiePolicy::Unlabeled) == Outcome::Class2);
}

TEST_CASE("both distances above the threshold mean unlabeled") {
    CHECK(decide(0.7, 0.7, 0.6, TiePolicy::Unlabeled) == Outcome::Unlabeled);
    CHECK(decide(0.61, 0.9, 0.6, TiePolicy::Unlabeled) == Outcome::Unlabeled);
    // Non-strict comparison: equality labels.
    CHECK(decide(0.6, 0.9, 0.6, TiePolicy::Unlabeled) == Outcome::Class1);
}

TEST_CASE("threshold zero disables the test entirely") {
    CHECK(decide(5.0, 9.0, 0.0, TiePolicy::Unlabeled) == Outcome::Class1);
    CHECK(decide(9.0, 5.0, 0.0, TiePolicy::Unlabeled) == Outcome::Class2);
    CHECK(decide(5.0, 5.0, 0.0, TiePolicy::Unlabeled) == Outcome::Unlabeled); // tie rule still applies
}

TEST_CASE("infinite threshold never leaves a point unlabeled") {
    CHECK(decide(123.0, 456.0, kInf, TiePolicy::Unlabeled) == Outcome::Class1);
    CHECK(decide(456.0, 123.0, kInf, TiePolicy::Unlabeled) == Outcome::Class2);
}

TEST_CASE("ties follow the tie policy") {
    CHECK(decide(0.3, 0.3, 0.6, TiePolicy::Unlabeled) == Outcome::Unlabeled);
    CHECK(decide(0.3, 0.3, 0.6, TiePolicy::Class1) == Outcome::Class1);
    // Tied above the threshold: unlabeled regardless of policy.
    CHECK(decide(0.9, 0.9, 0.6, TiePolicy::Class1) == Outcome::Unlabeled);
}

TEST_CASE("labeled set grows with the threshold") {
    Rng rng(62);
    for (int trial = 0; trial < 200; ++trial) {
        const double d1 = rng.uniform(0.0, 1.0);
        const double d2 = rng.uniform(0.0, 1.0);
        const double t_small = rng.uniform(0.01, 1.0);
        const double t_big = t_small + rng.uniform(0.0, 1.0);
        if (decide(d1, d2, t_small, TiePolicy::Unlabeled) != Outcome::Unlabeled)
            CHECK(decide(d1, d2, t_big, TiePolicy::Unlabeled) != Outcome::Unlabeled);
    }
}

TEST_CASE("decision invariants hold for sampled distances") {
    Rng rng(63);
    for (int trial = 0; trial < 300; ++trial) {
        const double d1 = rng.uniform(0.0, 1.0);
        const double d2 = rng.uniform(0.0, 1.0);
        const double t = rng.uniform(0.01, 1.2);
        const Outcome outcome = decide(d1, d2, t, TiePolicy::Unlabeled);
        if (outcome == Outcome::Class1) {
            CHECK(d1 <= t);
            CHECK(d1 <= d2);
        } else if (outcome == Outcome::Class2) {
            CHECK(d2 <= t);
            CHECK(d2 <= d1);
        } else {
            CHECK((std::min(d1, d2) > t || d1 == d2));
        }
    }
}

TEST_CASE("blob centers classify into their own blob") {
    const BlobFixture fix;
    AnnotatorConfig config;
    config.threshold = 0.8;
    for (MetricKind kind : {MetricKind::Bottleneck, MetricKind::Wasserstein}) {
        config.metric.kind = kind;
        const Annotator annotator(fix.class1, fix.class2, config);
        const std::vector<LabelDecision> decisions = annotator.annotate(fix.queries);
        REQUIRE(decisions.size() == fix.queries.size());
        for (std::size_t i = 0; i < decisions.size(); ++i) {
            REQUIRE(decisions[i].error.empty());
            const Outcome expected =
                fix.truth[i] == 1 ? Outcome::Class1 : Outcome::Class2;
            CHECK(decisions[i].outcome == expected);
        }
    }
}

TEST_CASE("duplicating a class point gives d1 == 0 and Class1") {
    const BlobFixture fix;
    AnnotatorConfig config;
    config.threshold = 0.4;
    const Annotator annotator(fix.class1, fix.class2, config);
    const LabelDecision decision = annotator.classify(fix.class1.point(3), 99);
    CHECK(decision.d1 == 0.0);
    CHECK(decision.outcome == Outcome::Class1);
    CHECK(decision.point_id == 99);

    // Any threshold, including a disabled one.
    AnnotatorConfig zero = config;
    zero.threshold = 0.0;
    CHECK(Annotator(fix.class1, fix.class2, zero).classify(fix.class1.point(3)).outcome ==
          Outcome::Class1);
}

TEST_CASE("mirror-symmetric configuration ties exactly") {
    const PointCloud class1 = cloud_2d({-2.0, 0.0, -2.0, 1.0, -2.5, 0.5});
    const PointCloud class2 = cloud_2d({2.0, 0.0, 2.0, 1.0, 2.5, 0.5});
    const PointCloud query = cloud_2d({0.0, 0.5});

    AnnotatorConfig config;
    config.threshold = 10.0;
    const Annotator annotator(class1, class2, config);
    const LabelDecision tied = annotator.classify(query.point(0));
    CHECK(tied.d1 == tied.d2);
    CHECK(tied.outcome == Outcome::Unlabeled);

    config.tie_policy = TiePolicy::Class1;
    CHECK(Annotator(class1, class2, config).classify(query.point(0)).outcome ==
          Outcome::Class1);
}

TEST_CASE("swapping the classes swaps the outcomes") {
    const BlobFixture fix(12, 6);
    AnnotatorConfig config;
    config.threshold = 0.8;
    const auto forward = Annotator(fix.class1, fix.class2, config).annotate(fix.queries);
    const auto backward = Annotator(fix.class2, fix.class1, config).annotate(fix.queries);
    REQUIRE(forward.size() == backward.size());
    for (std::size_t i = 0; i < forward.size(); ++i) {
        CHECK(forward[i].d1 == backward[i].d2);
        CHECK(forward[i].d2 == backward[i].d1);
        const Outcome expected = forward[i].outcome == Outcome::Class1   ? Outcome::Class2
                                 : forward[i].outcome == Outcome::Class2 ? Outcome::Class1
                                                                         : Outcome::Unlabeled;
        CHECK(backward[i].outcome == expected);
    }
}

TEST_CASE("annotate matches per-point classification and ignores order") {
    const BlobFixture fix(10, 8);
    AnnotatorConfig config;
    config.threshold = 0.8;
    const Annotator annotator(fix.class1, fix.class2, config);

    const std::vector<LabelDecision> batch = annotator.annotate(fix.queries);
    for (std::size_t i = 0; i < fix.queries.size(); ++i) {
        const LabelDecision single =
            annotator.classify(fix.queries.point(i), fix.queries.ids[i]);
        CHECK(single.outcome == batch[i].outcome);
        CHECK(single.d1 == batch[i].d1);
        CHECK(single.d2 == batch[i].d2);
    }

    // Shuffled input gives the same multiset of (id, outcome).
    Rng rng(64);
    std::vector<std::size_t> perm(fix.queries.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    rng.shuffle(perm);
    const std::vector<LabelDecision> shuffled = annotator.annotate(subset(fix.queries, perm));
    for (std::size_t i = 0; i < perm.size(); ++i) {
        CHECK(shuffled[i].point_id == batch[perm[i]].point_id);
        CHECK(shuffled[i].outcome == batch[perm[i]].outcome);
        CHECK(shuffled[i].d1 == batch[perm[i]].d1);
    }
}

TEST_CASE("parallel and serial annotation agree exactly") {
    const BlobFixture fix(10, 12);
    AnnotatorConfig config;
    config.threshold = 0.8;
    const Annotator annotator(fix.class1, fix.class2, config);
    const auto parallel = annotator.annotate(fix.queries);
    const auto serial = annotator.annotate_serial(fix.queries);
    REQUIRE(parallel.size() == serial.size());
    for (std::size_t i = 0; i < parallel.size(); ++i) {
        CHECK(parallel[i].point_id == serial[i].point_id);
        CHECK(parallel[i].outcome == serial[i].outcome);
        CHECK(parallel[i].d1 == serial[i].d1);
        CHECK(parallel[i].d2 == serial[i].d2);
        CHECK(parallel[i].error == serial[i].error);
    }
}

TEST_CASE("empty query set yields an empty decision list") {
    const BlobFixture fix(8, 4);
    PointCloud empty;
    empty.dim = 2;
    AnnotatorConfig config;
    CHECK(annotate_set(fix.class1, fix.class2, empty, config).empty());
}

TEST_CASE("one bad point does not abort the batch") {
    const BlobFixture fix(8, 4);
    PointCloud queries = fix.queries;
    queries.coords[2] = std::nan(""); // poison the second point
    AnnotatorConfig config;
    config.threshold = 0.8;
    const auto decisions = annotate_set(fix.class1, fix.class2, queries, config);
    REQUIRE(decisions.size() == queries.size());
    CHECK(decisions[0].error.empty());
    CHECK_FALSE(decisions[1].error.empty());
    CHECK(decisions[1].outcome == Outcome::Unlabeled);
    CHECK(decisions[2].error.empty());
}

TEST_CASE("degenerate configurations are rejected") {
    const PointCloud tiny = cloud_2d({0.0, 0.0});
    const PointCloud pair = cloud_2d({0.0, 0.0, 1.0, 1.0});
    AnnotatorConfig config;
    CHECK_THROWS_WITH_AS(Annotator(tiny, pair, config), doctest::Contains("ClassTooSmall"),
                         Error);

    PointCloud wrong_dim;
    wrong_dim.dim = 3;
    wrong_dim.coords = {0, 0, 0, 1, 1, 1};
    wrong_dim.ids = {0, 1};
    CHECK_THROWS_WITH_AS(Annotator(pair, wrong_dim, config),
                         doctest::Contains("DimensionMismatch"), Error);

    AnnotatorConfig bad = config;
    bad.threshold = -1.0;
    CHECK_THROWS_AS(Annotator(pair, pair, bad), Error);

    const Annotator ok(pair, pair, config);
    const double short_point[] = {0.5};
    CHECK_THROWS_AS(ok.classify(short_point), Error);
}

TEST_CASE("threshold sweep covers the full metric x threshold grid") {
    const BlobFixture fix(10, 6);
    const std::vector<double> thresholds{0.8, 0.6, 0.4, 0.2, 0.0};
    const std::vector<DiagramMetric> metrics{
        {MetricKind::Bottleneck, 1.0, DimAggregation::Max, 0},
        {MetricKind::Wasserstein, 1.0, DimAggregation::Max, 0}};
    AnnotatorConfig config;

    const std::vector<SweepCell> cells =
        threshold_sweep(fix.class1, fix.class2, fix.queries, thresholds, metrics, config);
    REQUIRE(cells.size() == 10);
    for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
        for (std::size_t ti = 0; ti < thresholds.size(); ++ti) {
            const SweepCell& cell = cells[mi * thresholds.size() + ti];
            CHECK(cell.metric.kind == metrics[mi].kind);
            CHECK(cell.threshold == thresholds[ti]);
            CHECK(cell.n_class1 + cell.n_class2 + cell.n_unlabeled == fix.queries.size());
            CHECK(cell.outcomes.size() == fix.queries.size());
        }
    }
}

TEST_CASE("sweep cells at threshold zero and infinity label everything") {
    const BlobFixture fix(10, 6);
    const std::vector<double> thresholds{0.0, kInf};
    const std::vector<DiagramMetric> metrics{{MetricKind::Bottleneck, 1.0, DimAggregation::Max, 0}};
    AnnotatorConfig config;
    const auto cells =
        threshold_sweep(fix.class1, fix.class2, fix.queries, thresholds, metrics, config);
    REQUIRE(cells.size() == 2);
    // Ties are measure-zero on random blobs, so everything gets a label.
    CHECK(cells[0].n_unlabeled == 0);
    CHECK(cells[1].n_unlabeled == 0);
}

TEST_CASE("degree-zero-only configuration works") {
    const BlobFixture fix(8, 4);
    AnnotatorConfig config;
    config.threshold = 0.8;
    config.max_homology_dim = 0;
    const auto decisions = annotate_set(fix.class1, fix.class2, fix.queries, config);
    for (const auto& d : decisions) CHECK(d.error.empty());
}
