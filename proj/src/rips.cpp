#include "topolabel/rips.hpp"

#include "topolabel/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace topolabel {

bool operator==(const Simplex& a, const Simplex& b) {
    return a.value == b.value && a.vertices == b.vertices;
}

double enclosing_radius(const DistanceMatrix& dmat) {
    const std::size_t n = dmat.n;
    if (n <= 1) return 0.0;
    double enc = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double row_max = 0.0;
        for (std::size_t j = 0; j < n; ++j) row_max = std::max(row_max, dmat(i, j));
        enc = std::min(enc, row_max);
    }
    return enc;
}

namespace {

struct FiltrationOrder {
    bool operator()(const Simplex& a, const Simplex& b) const {
        if (a.value != b.value) return a.value < b.value;
        if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
        return a.vertices < b.vertices;
    }
};

// Expands each k-simplex by one vertex past its current maximum, keeping
// cliques whose diameter stays within the radius bound. Diameter of the
// extension is max(parent diameter, distances to the new vertex).
std::vector<Simplex> expand(const std::vector<Simplex>& level, const DistanceMatrix& dmat,
                            double radius) {
    std::vector<Simplex> next;
    const std::size_t n = dmat.n;
    for (const Simplex& s : level) {
        for (int v = s.vertices.back() + 1; v < static_cast<int>(n); ++v) {
            double diam = s.value;
            bool ok = true;
            for (int u : s.vertices) {
                const double d = dmat(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
                if (d > radius) {
                    ok = false;
                    break;
                }
                diam = std::max(diam, d);
            }
            if (!ok) continue;
            Simplex t;
            t.vertices = s.vertices;
            t.vertices.push_back(v);
            t.value = diam;
            next.push_back(std::move(t));
        }
    }
    return next;
}

} // namespace

Filtration build_rips(const DistanceMatrix& dmat, int max_dim, std::optional<double> max_radius) {
    if (max_dim < 0) throw Error(Errc::InvalidArgument, "max_dim must be >= 0");
    if (max_radius && (*max_radius < 0.0 || std::isnan(*max_radius)))
        throw Error(Errc::InvalidRadius, "max_radius must be >= 0");
    validate(dmat);

    const std::size_t n = dmat.n;
    Filtration filt;
    filt.max_dim = std::min<int>(max_dim, n == 0 ? 0 : static_cast<int>(n) - 1);
    filt.enclosing_radius = max_radius ? *max_radius : enclosing_radius(dmat);

    std::vector<Simplex> level;
    level.reserve(n);
    for (std::size_t i = 0; i < n; ++i) level.push_back({{static_cast<int>(i)}, 0.0});
    filt.simplices = level;

    for (int d = 1; d <= filt.max_dim; ++d) {
        level = expand(level, dmat, filt.enclosing_radius);
        filt.simplices.insert(filt.simplices.end(), level.begin(), level.end());
    }

    std::sort(filt.simplices.begin(), filt.simplices.end(), FiltrationOrder{});
    return filt;
}

void write_filtration(std::ostream& os, const Filtration& filt) {
    for (const Simplex& s : filt.simplices) {
        os << s.dim();
        for (int v : s.vertices) os << ' ' << v;
        os << ' ' << s.value << '\n';
    }
}

} // namespace topolabel
