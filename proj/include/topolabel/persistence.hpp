#pragma once

#include "topolabel/rips.hpp"

#include <iosfwd>
#include <limits>
#include <vector>

namespace topolabel {

/// One (birth, death) pair of a persistence diagram. death is +inf for
/// essential classes until finitized.
struct PersistencePoint {
    int dim = 0;
    double birth = 0.0;
    double death = 0.0;

    bool essential() const { return death == std::numeric_limits<double>::infinity(); }
    double persistence() const { return death - birth; }
};

bool operator==(const PersistencePoint& a, const PersistencePoint& b);

enum class EssentialPolicy { None, Drop, CapAtEnclosingRadius };

const char* essential_policy_name(EssentialPolicy p);
EssentialPolicy parse_essential_policy(const std::string& name);

/// Multiset of persistence points sorted by (dim, birth, death).
/// Zero-persistence pairs are dropped at construction. essential_policy
/// records how +inf deaths were finitized (None = raw diagram);
/// enclosing_radius is the cap source, NaN for imported diagrams.
struct PersistenceDiagram {
    std::vector<PersistencePoint> points;
    EssentialPolicy essential_policy = EssentialPolicy::None;
    double enclosing_radius = std::numeric_limits<double>::quiet_NaN();

    bool has_essential() const {
        for (const auto& p : points)
            if (p.essential()) return true;
        return false;
    }
};

bool operator==(const PersistenceDiagram& a, const PersistenceDiagram& b);

struct ReductionOptions {
    /// Skip reduction of columns already paired as births (twist).
    /// Produces identical diagrams either way; kept switchable so tests
    /// can cross-check the two paths.
    bool clearing = true;
};

/// Boundary-matrix reduction over Z/2 in filtration order. Reports
/// degrees 0..max_dim-1 of the filtration; degree max_dim is dropped
/// entirely since deaths there would need (max_dim+1)-simplices.
/// Essential classes get death = +inf. Throws InvalidFiltration when a
/// face is missing or the order is not a filtration.
PersistenceDiagram compute_persistence(const Filtration& filt, const ReductionOptions& opts = {});

/// Removes or caps the +inf deaths so diagram distances are defined.
/// Cap uses the diagram's recorded enclosing radius; capped points that
/// land on the diagonal are dropped. Idempotent.
PersistenceDiagram finitize(const PersistenceDiagram& diag, EssentialPolicy policy);

/// JSON array of {dim, birth, death}, "inf" sentinel for +inf deaths.
/// Round-trips losslessly (coordinates serialized at full precision).
void write_diagram_json(std::ostream& os, const PersistenceDiagram& diag);
PersistenceDiagram read_diagram_json(std::istream& is);

} // namespace topolabel
