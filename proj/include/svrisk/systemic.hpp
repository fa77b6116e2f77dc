#pragma once

#include "svrisk/acceptance.hpp"

#include <vector>

namespace svrisk {

/// One affine upper bound of a concave piecewise-linear coordinate function.
struct AffinePiece {
    Rational slope;      // >= 0
    Rational intercept;
};

/// Separable nondecreasing concave aggregator: per coordinate the minimum of
/// its affine pieces, summed over coordinates.
struct Aggregator {
    std::vector<std::vector<AffinePiece>> pieces;

    Index dim() const { return static_cast<Index>(pieces.size()); }

    /// Gains counted linearly, losses amplified by alpha_i > 1:
    /// min(x_i, alpha_i * x_i) per coordinate.
    static Aggregator weighted_losses(const std::vector<Rational>& alpha);
    static Aggregator custom(std::vector<std::vector<AffinePiece>> pieces);

    bool is_cone() const;  // all intercepts zero
};

Rational aggregate(const Aggregator& L, const RVec& x);

/// {X : E[Lambda(X)] >= 0} as a lifted acceptance set (one lower-envelope
/// variable per scenario and coordinate).
AcceptanceSet preimage_acceptance(const Aggregator& L, const ScenarioSpace& space);

/// inf_x { <x, z> - Lambda(x) }, finite or -inf.
ExtReal conjugate(const Aggregator& L, const RVec& z);

/// Support of the preimage set at the density Z, computed both as a direct
/// support LP and by the scaling test lambda * s_min <= Z <= lambda * s_max;
/// disagreement is a hard failure. Cone aggregators only.
ExtReal aggregated_support(const Aggregator& L, const ScenarioSpace& space, const RandomVector& Z);

}  // namespace svrisk
