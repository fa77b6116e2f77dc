#include "svrisk/markets.hpp"

#include <stdexcept>
#include <utility>

namespace svrisk {

namespace {

void check_orthant_inside(const SolvencyCone& K) {
    for (Index i = 0; i < K.dim(); ++i)
        for (const auto& row : K.facets.rows) {
            const Rational& v = row.coeffs(i);
            bool ok = row.rel == Relation::GreaterEq ? v >= Rational(0)
                      : row.rel == Relation::LessEq  ? v <= Rational(0)
                                                     : v == Rational(0);
            if (!ok) throw std::invalid_argument("SolvencyCone: must contain the orthant");
        }
}

// E[Z | node] accumulated over the leaves of the node's subtree, expressed
// in unnormalized path mass (the dual cone is scale free).
RVec subtree_mass(const MarketModel& model, const RMat& zvals, Index node) {
    RVec y = RVec::Constant(model.d, Rational(0));
    for (Index a = 0; a < model.terminal.space.size(); ++a) {
        Index leaf = model.terminal.leaf_nodes[static_cast<std::size_t>(a)];
        if (model.tree.is_descendant(leaf, node))
            y += model.terminal.space.prob(a) * RVec(zvals.row(a).transpose());
    }
    return y;
}

bool in_dual_cone(const SolvencyCone& K, const RVec& y) {
    if (!K.generators.empty()) {
        for (const auto& g : K.generators)
            if (y.dot(g) < Rational(0)) return false;
        return true;
    }
    // y must be a sign-feasible combination of the facet functionals.
    const Index nrows = static_cast<Index>(K.facets.rows.size());
    LinearProgram lp;
    lp.sense = Sense::Minimize;
    lp.objective = RVec::Constant(nrows, Rational(0));
    lp.lower.assign(static_cast<std::size_t>(nrows), std::nullopt);
    lp.upper.assign(static_cast<std::size_t>(nrows), std::nullopt);
    for (Index k = 0; k < nrows; ++k) {
        if (K.facets.rows[static_cast<std::size_t>(k)].rel == Relation::GreaterEq)
            lp.lower[static_cast<std::size_t>(k)] = Rational(0);
        if (K.facets.rows[static_cast<std::size_t>(k)].rel == Relation::LessEq)
            lp.upper[static_cast<std::size_t>(k)] = Rational(0);
    }
    for (Index i = 0; i < K.dim(); ++i) {
        RVec r(nrows);
        for (Index k = 0; k < nrows; ++k) r(k) = K.facets.rows[static_cast<std::size_t>(k)].coeffs(i);
        lp.add_row(std::move(r), Relation::Equal, y(i));
    }
    return solve(lp).verdict == LpVerdict::Optimal;
}

// The pricing-system feasibility program: Z on leaves (n*d variables) plus
// dual-cone multipliers for nodes without generators.
LinearProgram pricing_program(const MarketModel& model, const Direction& w) {
    const Index n = model.terminal.space.size();
    const Index nz = n * model.d;
    const Index nodes = model.tree.node_count();
    std::vector<Index> mu_offset(static_cast<std::size_t>(nodes), -1);
    Index nvars = nz;
    for (Index v = 0; v < nodes; ++v)
        if (model.cones[static_cast<std::size_t>(v)].generators.empty()) {
            mu_offset[static_cast<std::size_t>(v)] = nvars;
            nvars += static_cast<Index>(model.cones[static_cast<std::size_t>(v)].facets.rows.size());
        }

    LinearProgram lp;
    lp.sense = Sense::Minimize;
    lp.objective = RVec::Constant(nvars, Rational(0));
    lp.lower.assign(static_cast<std::size_t>(nvars), Rational(0));
    lp.upper.assign(static_cast<std::size_t>(nvars), std::nullopt);
    for (Index v = 0; v < nodes; ++v) {
        const auto& K = model.cones[static_cast<std::size_t>(v)];
        Index off = mu_offset[static_cast<std::size_t>(v)];
        if (off < 0) continue;
        for (Index k = 0; k < static_cast<Index>(K.facets.rows.size()); ++k) {
            const auto& row = K.facets.rows[static_cast<std::size_t>(k)];
            if (row.rel == Relation::LessEq) {
                lp.lower[static_cast<std::size_t>(off + k)] = std::nullopt;
                lp.upper[static_cast<std::size_t>(off + k)] = Rational(0);
            }
            if (row.rel == Relation::Equal) lp.lower[static_cast<std::size_t>(off + k)] = std::nullopt;
        }
    }

    for (Index i = 0; i < model.d; ++i) {
        RVec r = RVec::Constant(nvars, Rational(0));
        for (Index a = 0; a < n; ++a) r(a * model.d + i) = model.terminal.space.prob(a);
        lp.add_row(std::move(r), Relation::Equal, w.w(i));
    }
    for (Index v = 0; v < nodes; ++v) {
        const auto& K = model.cones[static_cast<std::size_t>(v)];
        // y_i as a linear form in Z.
        RMat y = RMat::Constant(model.d, nvars, Rational(0));
        for (Index a = 0; a < n; ++a) {
            Index leaf = model.terminal.leaf_nodes[static_cast<std::size_t>(a)];
            if (!model.tree.is_descendant(leaf, v)) continue;
            for (Index i = 0; i < model.d; ++i)
                y(i, a * model.d + i) = model.terminal.space.prob(a);
        }
        if (!K.generators.empty()) {
            for (const auto& g : K.generators) {
                RVec r = RVec::Constant(nvars, Rational(0));
                for (Index i = 0; i < model.d; ++i) r += g(i) * RVec(y.row(i).transpose());
                lp.add_row(std::move(r), Relation::GreaterEq, Rational(0));
            }
        } else {
            Index off = mu_offset[static_cast<std::size_t>(v)];
            for (Index i = 0; i < model.d; ++i) {
                RVec r = RVec(y.row(i).transpose());
                for (Index k = 0; k < static_cast<Index>(K.facets.rows.size()); ++k)
                    r(off + k) = -K.facets.rows[static_cast<std::size_t>(k)].coeffs(i);
                lp.add_row(std::move(r), Relation::Equal, Rational(0));
            }
        }
    }
    return lp;
}

ExtReal ext_sum(std::initializer_list<ExtReal> vals) {
    Rational acc(0);
    for (const auto& v : vals) {
        if (v.is_neg_inf()) return ExtReal::neg_inf();
        if (v.is_pos_inf()) throw std::logic_error("ext_sum: unexpected +inf term");
        acc += v.value();
    }
    return ExtReal(std::move(acc));
}

}  // namespace

SolvencyCone SolvencyCone::from_generators(Index d, std::vector<RVec> gens) {
    if (gens.empty()) throw std::invalid_argument("SolvencyCone: at least one generator");
    LiftedPolyhedron lifted;
    lifted.main_dim = d;
    lifted.lift_dim = static_cast<Index>(gens.size());
    const Index arity = lifted.arity();
    for (Index i = 0; i < d; ++i) {
        RVec r = RVec::Constant(arity, Rational(0));
        r(i) = Rational(1);
        for (Index j = 0; j < lifted.lift_dim; ++j) {
            if (gens[static_cast<std::size_t>(j)].size() != d)
                throw std::invalid_argument("SolvencyCone: generator dimension mismatch");
            r(d + j) = -gens[static_cast<std::size_t>(j)](i);
        }
        lifted.add_row(std::move(r), Relation::Equal, Rational(0));
    }
    for (Index j = 0; j < lifted.lift_dim; ++j) {
        RVec r = RVec::Constant(arity, Rational(0));
        r(d + j) = Rational(1);
        lifted.add_row(std::move(r), Relation::GreaterEq, Rational(0));
    }
    auto proj = project(lifted);
    SolvencyCone K;
    K.facets.main_dim = d;
    for (const auto& f : proj.facets) K.facets.add_row(f.normal, Relation::GreaterEq, f.offset);
    K.generators = std::move(gens);
    check_orthant_inside(K);
    return K;
}

SolvencyCone SolvencyCone::from_rows(Index d, std::vector<LinearRow> rows) {
    for (const auto& row : rows)
        if (row.rhs != Rational(0)) throw std::invalid_argument("SolvencyCone: rows must be homogeneous");
    SolvencyCone K;
    K.facets = LiftedPolyhedron::from_rows(d, std::move(rows));
    check_orthant_inside(K);
    return K;
}

MarketModel::MarketModel(EventTree tree_, Index d_, std::vector<SolvencyCone> cones_,
                         AcceptanceSet acceptance_)
    : tree(std::move(tree_)),
      d(d_),
      cones(std::move(cones_)),
      acceptance(std::move(acceptance_)),
      terminal(tree_to_terminal_space(tree)) {
    if (static_cast<Index>(cones.size()) != tree.node_count())
        throw std::invalid_argument("MarketModel: one cone per tree node");
    for (const auto& K : cones)
        if (K.dim() != d) throw std::invalid_argument("MarketModel: cone dimension mismatch");
    if (!(acceptance.space == terminal.space) || acceptance.d != d)
        throw std::invalid_argument("MarketModel: acceptance must live on the terminal space");
}

AcceptanceSet augmented_acceptance(const MarketModel& model) {
    const auto& A = model.acceptance;
    const Index n = model.terminal.space.size();
    const Index nodes = model.tree.node_count();
    LiftedPolyhedron aug;
    aug.main_dim = A.flat_dim();
    aug.lift_dim = A.body.lift_dim + nodes * model.d;
    const Index c0 = A.flat_dim() + A.body.lift_dim;  // start of the c-blocks
    const Index arity = aug.arity();
    for (const auto& row : A.body.rows) {
        RVec r = RVec::Constant(arity, Rational(0));
        r.head(A.body.arity()) = row.coeffs;
        // The acceptance constraint applies to x minus the accumulated
        // transfers along each leaf path.
        for (Index v = 0; v < nodes; ++v)
            for (Index a = 0; a < n; ++a) {
                Index leaf = model.terminal.leaf_nodes[static_cast<std::size_t>(a)];
                if (!model.tree.is_descendant(leaf, v)) continue;
                for (Index i = 0; i < model.d; ++i)
                    r(c0 + v * model.d + i) -= row.coeffs(A.flat_index(a, i));
            }
        aug.rows.push_back({std::move(r), row.rel, row.rhs});
    }
    for (Index v = 0; v < nodes; ++v)
        for (const auto& row : model.cones[static_cast<std::size_t>(v)].facets.rows) {
            RVec r = RVec::Constant(arity, Rational(0));
            for (Index i = 0; i < model.d; ++i) r(c0 + v * model.d + i) = row.coeffs(i);
            aug.rows.push_back({std::move(r), row.rel, Rational(0)});
        }
    return AcceptanceSet(A.space, A.d, std::move(aug), A.is_cone, A.label + "+market");
}

RiskRegion superreplication_region(const MarketModel& model, const RandomVector& X) {
    return risk_region(augmented_acceptance(model), X);
}

ExtReal SigmaDecomposition::total() const {
    return ext_sum({sigma_acceptance, sigma_root, sigma_future});
}

SigmaDecomposition sigma_decomposition(const MarketModel& model, const RandomVector& Z) {
    if (!(Z.space == model.terminal.space) || Z.dim() != model.d)
        throw std::invalid_argument("sigma_decomposition: density mismatch");
    const Index n = model.terminal.space.size();
    RVec psi(model.acceptance.flat_dim());
    for (Index a = 0; a < n; ++a)
        for (Index i = 0; i < model.d; ++i)
            psi(model.acceptance.flat_index(a, i)) = Z.space.prob(a) * Z.values(a, i);

    SigmaDecomposition dec{support(model.acceptance.body, psi), ExtReal(Rational(0)),
                           ExtReal(Rational(0))};
    dec.sigma_root = support(model.cones[0].facets, subtree_mass(model, Z.values, 0));
    ExtReal future(Rational(0));
    for (Index v = 1; v < model.tree.node_count(); ++v) {
        auto term = support(model.cones[static_cast<std::size_t>(v)].facets,
                            subtree_mass(model, Z.values, v));
        future = ext_sum({future, term});
        if (future.is_neg_inf()) break;
    }
    dec.sigma_future = future;

    auto aug = augmented_acceptance(model);
    if (support(aug.body, psi) != dec.total())
        throw std::logic_error("sigma_decomposition: additivity check failed");
    return dec;
}

std::optional<PricingSystem> find_pricing_system(const MarketModel& model, const Direction& w) {
    if (w.w.size() != model.d) throw std::invalid_argument("find_pricing_system: direction dimension");
    auto out = solve(pricing_program(model, w));
    if (out.verdict != LpVerdict::Optimal) return std::nullopt;

    const Index n = model.terminal.space.size();
    RMat zvals(n, model.d);
    for (Index a = 0; a < n; ++a)
        for (Index i = 0; i < model.d; ++i) zvals(a, i) = out.primal(a * model.d + i);
    PricingSystem ps{RandomVector(model.terminal.space, zvals), {}};
    for (Index v = 0; v < model.tree.node_count(); ++v) {
        RVec y = subtree_mass(model, zvals, v) / model.tree.path_prob(v);
        if (!in_dual_cone(model.cones[static_cast<std::size_t>(v)], y))
            throw std::logic_error("find_pricing_system: node value escaped the dual cone");
        ps.node_values.push_back(std::move(y));
    }
    RVec e = expectation(ps.Z);
    if (e != w.w) throw std::logic_error("find_pricing_system: expectation drifted");
    return ps;
}

ExtReal superreplication_dual_value(const MarketModel& model, const RandomVector& X,
                                    const Direction& w) {
    if (!(X.space == model.terminal.space) || X.dim() != model.d)
        throw std::invalid_argument("superreplication_dual_value: payoff mismatch");
    auto lp = pricing_program(model, w);
    lp.sense = Sense::Maximize;
    const Index n = model.terminal.space.size();
    for (Index a = 0; a < n; ++a)
        for (Index i = 0; i < model.d; ++i)
            lp.objective(a * model.d + i) = -model.terminal.space.prob(a) * X.values(a, i);
    auto out = solve(lp);
    switch (out.verdict) {
        case LpVerdict::Optimal: return ExtReal(out.value);
        case LpVerdict::Infeasible: return ExtReal::neg_inf();
        case LpVerdict::Unbounded: return ExtReal::pos_inf();
    }
    throw std::logic_error("superreplication_dual_value: unreachable");
}

}  // namespace svrisk
