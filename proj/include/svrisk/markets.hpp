#pragma once

#include "svrisk/risk.hpp"

#include <optional>
#include <vector>

namespace svrisk {

/// A polyhedral solvency cone in R^d containing the nonnegative orthant.
/// Stored as lift-free facet rows (rhs 0); cones built from exchange-vector
/// generators keep them for direct dual-cone rows.
struct SolvencyCone {
    LiftedPolyhedron facets;
    std::vector<RVec> generators;

    Index dim() const { return facets.main_dim; }

    static SolvencyCone from_generators(Index d, std::vector<RVec> gens);
    static SolvencyCone from_rows(Index d, std::vector<LinearRow> rows);
};

/// A multi-period market on an event tree: one solvency cone per node and a
/// terminal acceptance set.
struct MarketModel {
    EventTree tree;
    Index d = 1;
    std::vector<SolvencyCone> cones;  // indexed by tree node
    AcceptanceSet acceptance;         // on the terminal space of the tree
    TerminalSpace terminal;

    MarketModel(EventTree tree, Index d, std::vector<SolvencyCone> cones,
                AcceptanceSet acceptance);
};

/// Terminal density of a consistent pricing system with its node process of
/// conditional expectations.
struct PricingSystem {
    RandomVector Z;
    std::vector<RVec> node_values;  // E[Z | node], indexed by tree node
};

/// The acceptance set enlarged by every adapted solvency transfer: one cone
/// element per node, charged to the leaves of its subtree.
AcceptanceSet augmented_acceptance(const MarketModel& model);

/// {m : X + m superreplicable}, the risk region of the augmented set.
RiskRegion superreplication_region(const MarketModel& model, const RandomVector& X);

struct SigmaDecomposition {
    ExtReal sigma_acceptance;
    ExtReal sigma_root;    // date-0 transfers
    ExtReal sigma_future;  // transfers at dates 1..T
    ExtReal total() const;
};

/// The three support values of the augmented decomposition, each computed
/// independently; their sum is checked against the support of the augmented
/// body itself.
SigmaDecomposition sigma_decomposition(const MarketModel& model, const RandomVector& Z);

/// A terminal density Z >= 0 with E[Z] = w whose conditional expectations
/// lie in every node's dual cone, or nothing when no such density exists.
std::optional<PricingSystem> find_pricing_system(const MarketModel& model, const Direction& w);

/// max { -E[<X, Z>] : Z a consistent pricing density with E[Z] = w };
/// -inf when no system exists.
ExtReal superreplication_dual_value(const MarketModel& model, const RandomVector& X,
                                    const Direction& w);

}  // namespace svrisk
