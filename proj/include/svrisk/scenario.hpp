#pragma once

#include "svrisk/linalg.hpp"

#include <vector>

namespace svrisk {

/// Finite probability space with strictly positive atom weights summing to 1.
class ScenarioSpace {
public:
    explicit ScenarioSpace(RVec probs);

    Index size() const { return probs_.size(); }
    const RVec& probs() const { return probs_; }
    const Rational& prob(Index s) const { return probs_(s); }

    friend bool operator==(const ScenarioSpace& a, const ScenarioSpace& b) {
        return a.probs_ == b.probs_;
    }

private:
    RVec probs_;
};

/// An n-scenario, d-coordinate array of exact values; one row per atom.
struct RandomVector {
    ScenarioSpace space;
    RMat values;  // n x d

    RandomVector(ScenarioSpace sp, RMat vals);

    Index scenarios() const { return values.rows(); }
    Index dim() const { return values.cols(); }

    static RandomVector constant(const ScenarioSpace& sp, const RVec& m);
};

/// E[<X,Z>] under the common space.
Rational pairing(const RandomVector& X, const RandomVector& Z);

/// Componentwise expectation.
RVec expectation(const RandomVector& Z);

/// Rooted event tree with exact conditional branch probabilities.
/// Node 0 is the deterministic date-0 root; leaves all sit at the horizon.
class EventTree {
public:
    struct Node {
        int parent = -1;        // -1 for the root
        Rational cond_prob;     // probability given the parent
    };

    explicit EventTree(std::vector<Node> nodes);

    Index node_count() const { return static_cast<Index>(nodes_.size()); }
    const Node& node(Index i) const { return nodes_[i]; }
    int date(Index i) const { return dates_[i]; }
    int horizon() const { return horizon_; }
    const std::vector<Index>& children(Index i) const { return children_[i]; }
    const std::vector<Index>& leaves() const { return leaves_; }
    bool is_leaf(Index i) const { return children_[i].empty(); }

    /// Unconditional probability of reaching a node (path product).
    Rational path_prob(Index i) const;

    /// True when `leaf` lies in the subtree of `anc`.
    bool is_descendant(Index leaf, Index anc) const;

private:
    std::vector<Node> nodes_;
    std::vector<int> dates_;
    std::vector<std::vector<Index>> children_;
    std::vector<Index> leaves_;
    int horizon_ = 0;
};

/// Identifies terminal-date measurable vectors with RandomVectors on leaves.
struct TerminalSpace {
    ScenarioSpace space;
    std::vector<Index> leaf_nodes;  // atom index -> tree node
};

TerminalSpace tree_to_terminal_space(const EventTree& tree);

/// One d-vector per tree node; measurability holds by construction.
struct AdaptedProcess {
    const EventTree* tree = nullptr;
    std::vector<RVec> node_values;
};

}  // namespace svrisk
