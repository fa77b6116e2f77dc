#pragma once

#include "svrisk/risk.hpp"

#include <optional>
#include <vector>

namespace svrisk {

enum class PrefRelation { FirstAtLeast, SecondAtLeast, Equivalent, Incomparable };

/// Evidence that one region is not contained in the other: a point of the
/// larger-claimed side outside the other, with the separating direction and
/// the scalarization values on both sides.
struct SeparationCertificate {
    RVec m;
    Direction w;
    ExtReal rho_first;
    ExtReal rho_second;
};

struct PreferenceVerdict {
    PrefRelation relation = PrefRelation::Incomparable;
    // Present when the named side fails to dominate: a point of the other
    // side's region that its own region misses.
    std::optional<SeparationCertificate> first_fails;
    std::optional<SeparationCertificate> second_fails;
};

/// X at least as good as Y iff region(X) contains region(Y).
PreferenceVerdict compare(const AcceptanceSet& A, const RandomVector& X, const RandomVector& Y,
                          const std::vector<Index>& mask);
PreferenceVerdict compare(const AcceptanceSet& A, const RandomVector& X, const RandomVector& Y);

/// Every simplex direction with denominator at most 4, in k coordinates,
/// deduplicated; deterministic order.
std::vector<Direction> probe_grid(Index k);

struct MultiUtilityRecord {
    PrefRelation geometric;
    PrefRelation scalar;
    bool agree = false;
    std::vector<Direction> used;    // directions that entered the scalar verdict
    std::vector<Direction> pruned;  // directions with no admissible extension
};

/// Recomputes the verdict from scalarization values only (facet normals of
/// both regions plus the probe grid, minus pruned directions) and checks it
/// against the geometric one.
MultiUtilityRecord multi_utility_check(const AcceptanceSet& A, const RandomVector& X,
                                       const RandomVector& Y, const std::vector<Index>& mask);
MultiUtilityRecord multi_utility_check(const AcceptanceSet& A, const RandomVector& X,
                                       const RandomVector& Y);

/// Negated scalarization; the dual flag selects the dual form.
ExtReal utility_value(const AcceptanceSet& A, const RandomVector& X, const Direction& pi,
                      const std::vector<Index>& mask, bool dual = false);
ExtReal utility_value(const AcceptanceSet& A, const RandomVector& X, const Direction& pi,
                      bool dual = false);

}  // namespace svrisk
