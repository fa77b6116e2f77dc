#include "svrisk/scenario.hpp"

#include <stdexcept>

namespace svrisk {

ScenarioSpace::ScenarioSpace(RVec probs) : probs_(std::move(probs)) {
    if (probs_.size() == 0) throw std::invalid_argument("ScenarioSpace: no atoms");
    Rational total(0);
    for (Index s = 0; s < probs_.size(); ++s) {
        if (probs_(s) <= Rational(0))
            throw std::invalid_argument("ScenarioSpace: atom probabilities must be strictly positive");
        total += probs_(s);
    }
    if (total != Rational(1))
        throw std::invalid_argument("ScenarioSpace: probabilities must sum to 1");
}

RandomVector::RandomVector(ScenarioSpace sp, RMat vals) : space(std::move(sp)), values(std::move(vals)) {
    if (values.rows() != space.size())
        throw std::invalid_argument("RandomVector: one row per scenario required");
    if (values.cols() < 1) throw std::invalid_argument("RandomVector: d >= 1 required");
}

RandomVector RandomVector::constant(const ScenarioSpace& sp, const RVec& m) {
    RMat vals(sp.size(), m.size());
    for (Index s = 0; s < sp.size(); ++s) vals.row(s) = m.transpose();
    return RandomVector(sp, std::move(vals));
}

Rational pairing(const RandomVector& X, const RandomVector& Z) {
    if (!(X.space == Z.space) || X.dim() != Z.dim())
        throw std::invalid_argument("pairing: space or dimension mismatch");
    Rational acc(0);
    for (Index s = 0; s < X.scenarios(); ++s)
        acc += X.space.prob(s) * X.values.row(s).dot(Z.values.row(s));
    return acc;
}

RVec expectation(const RandomVector& Z) {
    RVec e = RVec::Constant(Z.dim(), Rational(0));
    for (Index s = 0; s < Z.scenarios(); ++s) e += Z.space.prob(s) * RVec(Z.values.row(s).transpose());
    return e;
}

EventTree::EventTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
    const Index n = static_cast<Index>(nodes_.size());
    if (n == 0) throw std::invalid_argument("EventTree: empty");
    if (nodes_[0].parent != -1) throw std::invalid_argument("EventTree: node 0 must be the root");
    dates_.assign(n, 0);
    children_.assign(n, {});
    for (Index i = 1; i < n; ++i) {
        const int p = nodes_[i].parent;
        if (p < 0 || p >= i)
            throw std::invalid_argument("EventTree: parents must precede children");
        dates_[i] = dates_[p] + 1;
        children_[p].push_back(i);
        if (nodes_[i].cond_prob <= Rational(0))
            throw std::invalid_argument("EventTree: conditional probabilities must be positive");
    }
    for (Index i = 0; i < n; ++i) {
        if (children_[i].empty()) {
            leaves_.push_back(i);
            if (horizon_ < dates_[i]) horizon_ = dates_[i];
        } else {
            Rational total(0);
            for (Index c : children_[i]) total += nodes_[c].cond_prob;
            if (total != Rational(1))
                throw std::invalid_argument("EventTree: children probabilities must sum to 1");
        }
    }
    for (Index leaf : leaves_)
        if (dates_[leaf] != horizon_)
            throw std::invalid_argument("EventTree: all leaves must sit at the horizon");
}

Rational EventTree::path_prob(Index i) const {
    Rational p(1);
    while (nodes_[i].parent != -1) {
        p *= nodes_[i].cond_prob;
        i = nodes_[i].parent;
    }
    return p;
}

bool EventTree::is_descendant(Index leaf, Index anc) const {
    Index i = leaf;
    for (;;) {
        if (i == anc) return true;
        if (nodes_[i].parent == -1) return false;
        i = nodes_[i].parent;
    }
}

TerminalSpace tree_to_terminal_space(const EventTree& tree) {
    RVec probs(static_cast<Index>(tree.leaves().size()));
    std::vector<Index> leaf_nodes;
    Index a = 0;
    for (Index leaf : tree.leaves()) {
        probs(a++) = tree.path_prob(leaf);
        leaf_nodes.push_back(leaf);
    }
    return TerminalSpace{ScenarioSpace(std::move(probs)), std::move(leaf_nodes)};
}

}  // namespace svrisk
