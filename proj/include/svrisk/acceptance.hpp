#pragma once

#include "svrisk/geometry.hpp"
#include "svrisk/scenario.hpp"

#include <string>
#include <vector>

namespace svrisk {

/// A closed convex set of acceptable positions, encoded as a lifted system
/// over the n*d flattened coordinates (scenario-major: X_{s,i} at s*d + i).
/// Construction validates monotonicity in every coordinate direction,
/// nonemptiness and properness.
struct AcceptanceSet {
    ScenarioSpace space;
    Index d = 1;
    LiftedPolyhedron body;  // main_dim == space.size() * d
    bool is_cone = false;
    std::string label;

    AcceptanceSet(ScenarioSpace space, Index d, LiftedPolyhedron body, bool is_cone,
                  std::string label);

    Index flat_dim() const { return space.size() * d; }
    Index flat_index(Index s, Index i) const { return s * d + i; }
};

/// Positions nonnegative in every scenario and coordinate. A restriction to
/// a subset of coordinates leaves the remaining ones unconstrained.
AcceptanceSet worst_case(const ScenarioSpace& space, Index d);
AcceptanceSet worst_case(const ScenarioSpace& space, Index d, const std::vector<Index>& coords);

/// Scalar positions with nonnegative expectation.
AcceptanceSet expectation_set(const ScenarioSpace& space);

/// Componentwise expected-shortfall constraints ES_{alpha_i}(X_i) <= 0,
/// written as a lifted linear system (auxiliary level t_i and excess u_{s,i}).
AcceptanceSet expected_shortfall_set(const ScenarioSpace& space, Index d,
                                     const std::vector<Rational>& alpha);

/// Exact expected shortfall of a scalar position at level alpha in (0, 1),
/// by quantile integration; cross-checked internally against the
/// minimization form min_t { -t + E[(t - x)^+] / alpha }.
Rational es_value(const ScenarioSpace& space, const RVec& x, const Rational& alpha);

/// A + sum of the given cones, as one lifted system. Every summand must
/// contain the origin so acceptability is only ever enlarged.
AcceptanceSet minkowski_augment(const AcceptanceSet& A, const std::vector<LiftedPolyhedron>& cones);

/// Exact membership of a position in the acceptance set.
bool is_member(const AcceptanceSet& A, const RandomVector& X);

}  // namespace svrisk
