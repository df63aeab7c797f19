#include "topolabel/oracle.hpp"

#include "topolabel/diagram_distance.hpp"
#include "topolabel/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>

namespace topolabel {

namespace {

// Local copy of the filtration sort order; the oracle deliberately does
// not call into rips.cpp.
bool order_less(const Simplex& a, const Simplex& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
}

double subset_diameter(const std::vector<int>& vs, const DistanceMatrix& dmat) {
    double diam = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            diam = std::max(diam, dmat(static_cast<std::size_t>(vs[i]),
                                       static_cast<std::size_t>(vs[j])));
    return diam;
}

void enumerate_subsets(const DistanceMatrix& dmat, double radius, std::size_t max_size,
                       std::vector<int>& current, int start, std::vector<Simplex>& out) {
    for (int v = start; v < static_cast<int>(dmat.n); ++v) {
        current.push_back(v);
        const double diam = subset_diameter(current, dmat);
        // Diameter is monotone in the vertex set, so supersets cannot
        // come back under the radius.
        if (diam <= radius) {
            out.push_back({current, diam});
            if (current.size() < max_size)
                enumerate_subsets(dmat, radius, max_size, current, v + 1, out);
        }
        current.pop_back();
    }
}

// ---- GF(2) rank -----------------------------------------------------------

using Bits = std::vector<std::uint64_t>;

int top_bit(const Bits& bits) {
    for (std::size_t w = bits.size(); w-- > 0;)
        if (bits[w])
            return static_cast<int>(w * 64 + 63 - static_cast<std::size_t>(std::countl_zero(bits[w])));
    return -1;
}

std::size_t gf2_rank(std::vector<Bits> cols) {
    std::unordered_map<int, std::size_t> pivot_at;
    std::vector<Bits> pivots;
    std::size_t rank = 0;
    for (Bits& col : cols) {
        int hi;
        while ((hi = top_bit(col)) >= 0) {
            auto it = pivot_at.find(hi);
            if (it == pivot_at.end()) {
                pivot_at.emplace(hi, pivots.size());
                pivots.push_back(col);
                ++rank;
                break;
            }
            const Bits& p = pivots[it->second];
            for (std::size_t w = 0; w < col.size(); ++w) col[w] ^= p[w];
        }
    }
    return rank;
}

// ---- brute-force matching -------------------------------------------------

double cross_cost(const PersistencePoint& a, const PersistencePoint& b) {
    return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diag_cost(const PersistencePoint& p) { return (p.death - p.birth) / 2.0; }

struct BruteSearch {
    std::span<const PersistencePoint> d1, d2;
    std::vector<char> used;
    bool max_form = true; // bottleneck: max of costs; else sum of cost^q
    double q = 1.0;
    double best = std::numeric_limits<double>::infinity();

    double combine(double acc, double cost) const {
        return max_form ? std::max(acc, cost) : acc + std::pow(cost, q);
    }

    void run(std::size_t i, double acc) {
        if (acc >= best) return;
        if (i == d1.size()) {
            double total = acc;
            for (std::size_t j = 0; j < d2.size(); ++j)
                if (!used[j]) total = combine(total, diag_cost(d2[j]));
            best = std::min(best, total);
            return;
        }
        run(i + 1, combine(acc, diag_cost(d1[i])));
        for (std::size_t j = 0; j < d2.size(); ++j) {
            if (used[j]) continue;
            used[j] = 1;
            run(i + 1, combine(acc, cross_cost(d1[i], d2[j])));
            used[j] = 0;
        }
    }
};

double brute_force(std::span<const PersistencePoint> d1, std::span<const PersistencePoint> d2,
                   bool max_form, double q) {
    BruteSearch search;
    search.d1 = d1;
    search.d2 = d2;
    search.used.assign(d2.size(), 0);
    search.max_form = max_form;
    search.q = q;
    search.run(0, 0.0);
    return max_form ? search.best : std::pow(search.best, 1.0 / q);
}

} // namespace

Filtration exhaustive_rips(const DistanceMatrix& dmat, int max_dim,
                           std::optional<double> max_radius) {
    if (max_dim < 0) throw Error(Errc::InvalidArgument, "max_dim must be >= 0");
    if (max_radius && (*max_radius < 0.0 || std::isnan(*max_radius)))
        throw Error(Errc::InvalidRadius, "max_radius must be >= 0");
    validate(dmat);

    Filtration filt;
    filt.max_dim = std::min<int>(max_dim, dmat.n == 0 ? 0 : static_cast<int>(dmat.n) - 1);
    filt.enclosing_radius = max_radius ? *max_radius : enclosing_radius(dmat);

    std::vector<int> current;
    enumerate_subsets(dmat, filt.enclosing_radius, static_cast<std::size_t>(filt.max_dim) + 1,
                      current, 0, filt.simplices);
    std::sort(filt.simplices.begin(), filt.simplices.end(), order_less);
    return filt;
}

std::vector<std::size_t> betti_numbers(const Filtration& filt, double radius, int up_to) {
    if (up_to < 0) throw Error(Errc::InvalidArgument, "up_to must be >= 0");
    if (up_to > filt.max_dim - 1)
        throw Error(Errc::InvalidArgument,
                    "betti_" + std::to_string(up_to) + " needs simplices of dimension " +
                        std::to_string(up_to + 1) + "; filtration stops at " +
                        std::to_string(filt.max_dim));

    // Subcomplex at the radius, indexed per dimension.
    std::vector<std::map<std::vector<int>, std::size_t>> index(
        static_cast<std::size_t>(filt.max_dim) + 1);
    for (const Simplex& s : filt.simplices) {
        if (s.value > radius) continue;
        auto& level = index[static_cast<std::size_t>(s.dim())];
        const std::size_t next = level.size();
        level.emplace(s.vertices, next);
    }

    auto boundary_rank = [&](int k) -> std::size_t {
        if (k <= 0 || k > filt.max_dim) return 0;
        const auto& domain = index[static_cast<std::size_t>(k)];
        const auto& codomain = index[static_cast<std::size_t>(k - 1)];
        if (domain.empty() || codomain.empty()) return 0;
        const std::size_t words = (codomain.size() + 63) / 64;
        std::vector<Bits> cols;
        cols.reserve(domain.size());
        for (const auto& [vertices, unused] : domain) {
            Bits col(words, 0);
            std::vector<int> facet;
            facet.reserve(vertices.size() - 1);
            for (std::size_t drop = 0; drop < vertices.size(); ++drop) {
                facet.clear();
                for (std::size_t j = 0; j < vertices.size(); ++j)
                    if (j != drop) facet.push_back(vertices[j]);
                const auto it = codomain.find(facet);
                if (it == codomain.end())
                    throw Error(Errc::InvalidFiltration, "facet missing from subcomplex");
                col[it->second / 64] ^= 1ull << (it->second % 64);
            }
            cols.push_back(std::move(col));
        }
        return gf2_rank(std::move(cols));
    };

    std::vector<std::size_t> betti;
    for (int k = 0; k <= up_to; ++k) {
        const long long n_k = static_cast<long long>(index[static_cast<std::size_t>(k)].size());
        const long long value = n_k - static_cast<long long>(boundary_rank(k)) -
                                static_cast<long long>(boundary_rank(k + 1));
        if (value < 0) throw Error(Errc::InvalidFiltration, "negative Betti number");
        betti.push_back(static_cast<std::size_t>(value));
    }
    return betti;
}

std::size_t alive_at(const PersistenceDiagram& diag, int dim, double radius) {
    std::size_t count = 0;
    for (const PersistencePoint& p : diag.points)
        if (p.dim == dim && p.birth <= radius && radius < p.death) ++count;
    return count;
}

double brute_force_bottleneck(std::span<const PersistencePoint> d1,
                              std::span<const PersistencePoint> d2) {
    return brute_force(d1, d2, true, 1.0);
}

double brute_force_wasserstein(std::span<const PersistencePoint> d1,
                               std::span<const PersistencePoint> d2, double q) {
    if (!(q >= 1.0)) throw Error(Errc::InvalidOrder, "wasserstein order must be >= 1");
    return brute_force(d1, d2, false, q);
}

std::vector<PersistencePoint> random_diagram(Rng& rng, std::size_t max_points, int dim) {
    const std::size_t n = rng.below(max_points + 1);
    std::vector<PersistencePoint> points;
    points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!points.empty() && rng.uniform() < 0.15) {
            points.push_back(points.back()); // occasional duplicates stress ties
            continue;
        }
        PersistencePoint p;
        p.dim = dim;
        p.birth = rng.uniform(0.0, 2.0);
        p.death = p.birth + rng.uniform(0.05, 1.5);
        points.push_back(p);
    }
    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
        return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
    });
    return points;
}

int run_oracle_suite(std::size_t n, std::uint64_t seed, std::ostream& out) {
    if (n < 4 || n > 16)
        throw Error(Errc::InvalidArgument, "oracle point count must lie in [4,16]");

    int failures = 0;
    Rng rng(seed);
    const auto report = [&](bool ok, const std::string& name) {
        out << (ok ? "ok   " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };
    const auto random_cloud = [&](std::size_t count, std::size_t dim) {
        PointCloud cloud;
        cloud.dim = dim;
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t k = 0; k < dim; ++k) cloud.coords.push_back(rng.uniform());
            cloud.ids.push_back(static_cast<int>(i));
        }
        return cloud;
    };

    {
        const PointCloud cloud = random_cloud(n, 3);
        const DistanceMatrix dmat = pairwise_distances(cloud);
        bool ok = true;
        for (int max_dim : {1, 2, 3}) {
            const Filtration a = build_rips(dmat, max_dim);
            const Filtration b = exhaustive_rips(dmat, max_dim);
            ok = ok && a.simplices == b.simplices;
        }
        report(ok, "rips filtration equals exhaustive subset enumeration (" +
                       std::to_string(n) + " points, max_dim 1-3)");
    }

    const std::size_t betti_n = std::min<std::size_t>(n, 8);
    {
        const PointCloud cloud = random_cloud(betti_n, 3);
        const DistanceMatrix dmat = pairwise_distances(cloud);
        const Filtration filt = build_rips(dmat, 3);
        const PersistenceDiagram diag = compute_persistence(filt);

        std::vector<double> radii;
        for (const Simplex& s : filt.simplices) radii.push_back(s.value);
        std::sort(radii.begin(), radii.end());
        radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
        const std::size_t distinct = radii.size();
        for (std::size_t i = 0; i + 1 < distinct; ++i)
            radii.push_back((radii[i] + radii[i + 1]) / 2.0); // off-grid radii too

        bool ok = true;
        for (double r : radii) {
            const std::vector<std::size_t> betti = betti_numbers(filt, r, 2);
            for (int k = 0; k <= 2; ++k) ok = ok && betti[static_cast<std::size_t>(k)] ==
                                                       alive_at(diag, k, r);
        }
        report(ok, "diagram alive-counts equal GF(2) rank Betti numbers (" +
                       std::to_string(betti_n) + " points, degrees 0-2)");

        ReductionOptions plain;
        plain.clearing = false;
        report(compute_persistence(filt, plain) == diag,
               "reduction with and without clearing agrees");
    }

    {
        bool ok = true;
        for (int trial = 0; trial < 25; ++trial) {
            const auto d1 = random_diagram(rng, 6, 0);
            const auto d2 = random_diagram(rng, 6, 0);
            const double exact = bottleneck(d1, d2).first;
            const double brute = brute_force_bottleneck(d1, d2);
            ok = ok && std::abs(exact - brute) <= 1e-12;
        }
        report(ok, "bottleneck equals factorial brute force (25 random diagram pairs)");
    }

    {
        bool ok = true;
        for (double q : {1.0, 2.0}) {
            for (int trial = 0; trial < 25; ++trial) {
                const auto d1 = random_diagram(rng, 6, 0);
                const auto d2 = random_diagram(rng, 6, 0);
                const double exact = wasserstein(d1, d2, q).first;
                const double brute = brute_force_wasserstein(d1, d2, q);
                ok = ok && std::abs(exact - brute) <= 1e-9;
            }
        }
        report(ok, "wasserstein (q=1,2) equals factorial brute force (25 pairs each)");
    }

    out << (failures == 0 ? std::string("all checks passed\n")
                          : std::to_string(failures) + " check(s) FAILED\n");
    return failures;
}

} // namespace topolabel
