#include "topolabel/persistence.hpp"

#include "topolabel/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <unordered_map>

namespace topolabel {

bool operator==(const PersistencePoint& a, const PersistencePoint& b) {
    return a.dim == b.dim && a.birth == b.birth && a.death == b.death;
}

bool operator==(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    return a.points == b.points;
}

const char* essential_policy_name(EssentialPolicy p) {
    switch (p) {
    case EssentialPolicy::None: return "none";
    case EssentialPolicy::Drop: return "drop";
    case EssentialPolicy::CapAtEnclosingRadius: return "cap";
    }
    return "none";
}

EssentialPolicy parse_essential_policy(const std::string& name) {
    if (name == "none") return EssentialPolicy::None;
    if (name == "drop") return EssentialPolicy::Drop;
    if (name == "cap" || name == "cap-at-enclosing-radius")
        return EssentialPolicy::CapAtEnclosingRadius;
    throw Error(Errc::InvalidArgument, "unknown essential policy '" + name + "'");
}

namespace {

constexpr std::uint32_t kNone = 0xffffffffu;

struct VertexVecHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 1469598103934665603ull; // FNV-1a
        for (int x : v) {
            h ^= static_cast<std::size_t>(x) + 1;
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Position of every simplex in the filtration, keyed by vertex set.
// Small simplices (<= 4 vertices) pack into a uint64 fast path; larger
// ones fall back to a vector-keyed map.
class SimplexIndex {
public:
    explicit SimplexIndex(const Filtration& filt) {
        for (std::uint32_t g = 0; g < filt.simplices.size(); ++g) {
            const auto& vs = filt.simplices[g].vertices;
            if (vs.size() <= 4 && packable(vs))
                packed_[pack(vs)] = g;
            else
                general_[vs] = g;
        }
    }

    std::uint32_t find(const std::vector<int>& vs) const {
        if (vs.size() <= 4 && packable(vs)) {
            auto it = packed_.find(pack(vs));
            return it == packed_.end() ? kNone : it->second;
        }
        auto it = general_.find(vs);
        return it == general_.end() ? kNone : it->second;
    }

private:
    static bool packable(const std::vector<int>& vs) { return vs.empty() || vs.back() < 0xffff; }

    static std::uint64_t pack(const std::vector<int>& vs) {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < vs.size(); ++i)
            key |= static_cast<std::uint64_t>(vs[i] + 1) << (16 * i);
        return key;
    }

    std::unordered_map<std::uint64_t, std::uint32_t> packed_;
    std::unordered_map<std::vector<int>, std::uint32_t, VertexVecHash> general_;
};

// Z/2 column addition: symmetric difference of sorted index lists.
void add_column(std::vector<std::uint32_t>& target, const std::vector<std::uint32_t>& other,
                std::vector<std::uint32_t>& scratch) {
    scratch.clear();
    std::set_symmetric_difference(target.begin(), target.end(), other.begin(), other.end(),
                                  std::back_inserter(scratch));
    target.swap(scratch);
}

struct ReductionState {
    std::vector<std::vector<std::uint32_t>> boundary;
    std::vector<std::uint32_t> pivot_owner;   // row -> column holding that pivot
    std::vector<std::uint32_t> death_partner; // birth column -> its death column
    std::vector<char> positive;
};

// Reduces one column against previously settled pivots of its dimension.
void reduce_column(std::uint32_t g, ReductionState& st, std::vector<std::uint32_t>& scratch) {
    auto& col = st.boundary[g];
    while (!col.empty() && st.pivot_owner[col.back()] != kNone)
        add_column(col, st.boundary[st.pivot_owner[col.back()]], scratch);
    if (col.empty()) {
        st.positive[g] = 1;
    } else {
        const std::uint32_t low = col.back();
        st.pivot_owner[low] = g;
        st.death_partner[low] = g;
        st.positive[low] = 1;
    }
}

} // namespace

PersistenceDiagram compute_persistence(const Filtration& filt, const ReductionOptions& opts) {
    const std::size_t m = filt.simplices.size();
    SimplexIndex index(filt);

    ReductionState st;
    st.boundary.resize(m);
    st.pivot_owner.assign(m, kNone);
    st.death_partner.assign(m, kNone);
    st.positive.assign(m, 0);

    double prev_value = -std::numeric_limits<double>::infinity();
    for (std::uint32_t g = 0; g < m; ++g) {
        const Simplex& s = filt.simplices[g];
        if (s.value < prev_value)
            throw Error(Errc::InvalidFiltration, "simplices not in filtration order");
        prev_value = s.value;

        if (s.dim() == 0) {
            st.positive[g] = 1; // vertices have empty boundary
            continue;
        }
        auto& col = st.boundary[g];
        col.reserve(s.vertices.size());
        std::vector<int> facet(s.vertices.begin() + 1, s.vertices.end());
        for (std::size_t drop = 0;; ++drop) {
            const std::uint32_t f = index.find(facet);
            if (f == kNone || f >= g)
                throw Error(Errc::InvalidFiltration, "face missing or out of order");
            col.push_back(f);
            if (drop == facet.size()) break;
            facet[drop] = s.vertices[drop]; // restore dropped vertex, drop the next
        }
        std::sort(col.begin(), col.end());
    }

    std::vector<std::uint32_t> scratch;
    if (opts.clearing) {
        // Twist: settle high dimensions first; a column paired as a birth
        // there is positive by construction and its reduction is skipped.
        for (int d = filt.max_dim; d >= 1; --d)
            for (std::uint32_t g = 0; g < m; ++g) {
                if (filt.simplices[g].dim() != d) continue;
                if (st.death_partner[g] != kNone) continue;
                reduce_column(g, st, scratch);
            }
    } else {
        for (std::uint32_t g = 0; g < m; ++g)
            if (filt.simplices[g].dim() >= 1) reduce_column(g, st, scratch);
    }

    PersistenceDiagram diag;
    diag.enclosing_radius = filt.enclosing_radius;
    for (std::uint32_t g = 0; g < m; ++g) {
        const Simplex& s = filt.simplices[g];
        if (st.death_partner[g] != kNone) {
            const double death = filt.simplices[st.death_partner[g]].value;
            if (death != s.value) diag.points.push_back({s.dim(), s.value, death});
        } else if (st.positive[g] && s.dim() < filt.max_dim) {
            diag.points.push_back({s.dim(), s.value, std::numeric_limits<double>::infinity()});
        }
    }
    std::sort(diag.points.begin(), diag.points.end(), [](const auto& a, const auto& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
    return diag;
}

PersistenceDiagram finitize(const PersistenceDiagram& diag, EssentialPolicy policy) {
    if (policy == EssentialPolicy::None) return diag;
    PersistenceDiagram out;
    out.enclosing_radius = diag.enclosing_radius;
    out.essential_policy = policy;
    for (const auto& p : diag.points) {
        if (!p.essential()) {
            out.points.push_back(p);
            continue;
        }
        if (policy == EssentialPolicy::Drop) continue;
        if (std::isnan(diag.enclosing_radius))
            throw Error(Errc::InvalidArgument,
                        "cannot cap essential classes: no enclosing radius recorded");
        if (diag.enclosing_radius != p.birth) // capped onto the diagonal -> drop
            out.points.push_back({p.dim, p.birth, diag.enclosing_radius});
    }
    return out;
}

void write_diagram_json(std::ostream& os, const PersistenceDiagram& diag) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : diag.points) {
        nlohmann::json item = {{"dim", p.dim}, {"birth", p.birth}};
        if (p.essential())
            item["death"] = "inf";
        else
            item["death"] = p.death;
        arr.push_back(std::move(item));
    }
    os << arr.dump(2) << '\n';
}

PersistenceDiagram read_diagram_json(std::istream& is) {
    nlohmann::json arr;
    try {
        is >> arr;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::IngestError, std::string("diagram JSON: ") + e.what());
    }
    if (!arr.is_array()) throw Error(Errc::IngestError, "diagram JSON: expected a top-level array");

    PersistenceDiagram diag;
    for (const auto& item : arr) {
        if (!item.is_object() || !item.contains("dim") || !item.contains("birth") ||
            !item.contains("death"))
            throw Error(Errc::IngestError, "diagram JSON: expected {dim, birth, death} objects");
        PersistencePoint p;
        try {
            p.dim = item["dim"].get<int>();
            p.birth = item["birth"].get<double>();
            if (item["death"].is_string()) {
                if (item["death"].get<std::string>() != "inf")
                    throw Error(Errc::IngestError, "diagram JSON: bad death sentinel");
                p.death = std::numeric_limits<double>::infinity();
            } else {
                p.death = item["death"].get<double>();
            }
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::IngestError, std::string("diagram JSON: ") + e.what());
        }
        if (p.dim < 0 || p.birth < 0.0 || p.death < p.birth)
            throw Error(Errc::IngestError, "diagram JSON: invalid persistence point");
        diag.points.push_back(p);
    }
    std::sort(diag.points.begin(), diag.points.end(), [](const auto& a, const auto& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
    return diag;
}

} // namespace topolabel
