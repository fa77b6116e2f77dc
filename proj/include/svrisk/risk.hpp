#pragma once

#include "svrisk/acceptance.hpp"

#include <optional>
#include <vector>

namespace svrisk {

/// A nonzero componentwise-nonnegative pricing direction, stored
/// simplex-normalized (components sum to 1) so rays have one representative.
struct Direction {
    RVec w;
    explicit Direction(RVec w);
};

/// The set {m : X + m acceptable} over the active coordinates of the mask.
/// Inactive coordinates of m are pinned to zero and do not appear.
struct RiskRegion {
    std::vector<Index> coords;      // active coordinates, sorted
    bool empty = false;
    std::vector<Halfspace> facets;  // over the active coordinates
};

/// Attainment certificate for the dual scalarization: a nonnegative density
/// Z with masked expectation w, and the finite support value sigma of the
/// acceptance body at the induced functional.
struct DualElement {
    RandomVector Z;
    Direction w;
    Rational sigma;
};

struct RhoDual {
    ExtReal value;
    std::optional<DualElement> cert;  // finite values only
};

/// Diagnostics for the sufficient finiteness conditions: the acceptance set
/// plus the masked constants span everything; the masked constants meet the
/// quasi-interior of the monotonicity cone; they meet the quasi-interior of
/// the recession cone of the body.
struct FinitenessReport {
    bool sum_is_whole_space = false;
    bool mask_meets_qint_cone = false;
    bool mask_meets_qint_recession = false;
    bool finite_guaranteed = false;
};

std::vector<Index> full_mask(Index d);

/// The lifted feasibility system over (m_active, body lifts):
/// X + inject(m) in the acceptance body.
LiftedPolyhedron risk_system(const AcceptanceSet& A, const RandomVector& X,
                             const std::vector<Index>& mask);

RiskRegion risk_region(const AcceptanceSet& A, const RandomVector& X,
                       const std::vector<Index>& mask);
RiskRegion risk_region(const AcceptanceSet& A, const RandomVector& X);

/// inf { <w, m> : X + inject(m) acceptable }; +inf on an empty region,
/// -inf when unbounded below.
ExtReal rho(const AcceptanceSet& A, const RandomVector& X, const Direction& pi,
            const std::vector<Index>& mask);
ExtReal rho(const AcceptanceSet& A, const RandomVector& X, const Direction& pi);

/// The dual scalarization, computed as an explicit dual linear program.
/// Finite values return a verified DualElement with
/// value = sigma - E[<X, Z>]; -inf means no admissible extension of the
/// direction meets the barrier cone (the direction carries no utility).
RhoDual rho_dual(const AcceptanceSet& A, const RandomVector& X, const Direction& pi,
                 const std::vector<Index>& mask);
RhoDual rho_dual(const AcceptanceSet& A, const RandomVector& X, const Direction& pi);

FinitenessReport finiteness_report(const AcceptanceSet& A, const std::vector<Index>& mask);

}  // namespace svrisk
