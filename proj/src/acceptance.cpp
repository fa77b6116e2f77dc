#include "svrisk/acceptance.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace svrisk {

namespace {

// A proper closed convex set admits a supporting halfspace, so the body is
// proper exactly when some nonzero main-coordinate functional with zero lift
// part lies in the barrier cone. Barrier membership is dual feasibility of
// the support LP, which is a pure sign-constrained system in one multiplier
// per row; probe each +-unit functional.
bool has_nonzero_barrier(const LiftedPolyhedron& P) {
    const Index nrows = static_cast<Index>(P.rows.size());
    if (nrows == 0) return false;
    for (Index j = 0; j < P.main_dim; ++j) {
        for (int sgn : {1, -1}) {
            LinearProgram lp;
            lp.sense = Sense::Minimize;
            lp.objective = RVec::Constant(nrows, Rational(0));
            lp.lower.assign(nrows, std::nullopt);
            lp.upper.assign(nrows, std::nullopt);
            for (Index k = 0; k < nrows; ++k) {
                if (P.rows[k].rel == Relation::GreaterEq) lp.lower[k] = Rational(0);
                if (P.rows[k].rel == Relation::LessEq) lp.upper[k] = Rational(0);
            }
            // Pin coordinate j of the combined functional to +-1 (a cone is
            // scale free), zero on the lift part, free elsewhere in main.
            for (Index col = 0; col < P.arity(); ++col) {
                if (col != j && col < P.main_dim) continue;
                RVec row(nrows);
                for (Index k = 0; k < nrows; ++k) row(k) = P.rows[k].coeffs(col);
                Rational target = (col == j) ? Rational(sgn) : Rational(0);
                lp.add_row(std::move(row), Relation::Equal, std::move(target));
            }
            if (solve(lp).verdict == LpVerdict::Optimal) return true;
        }
    }
    return false;
}

RVec unit(Index dim, Index j) {
    RVec e = RVec::Constant(dim, Rational(0));
    e(j) = Rational(1);
    return e;
}

}  // namespace

AcceptanceSet::AcceptanceSet(ScenarioSpace space_, Index d_, LiftedPolyhedron body_, bool cone,
                             std::string label_)
    : space(std::move(space_)), d(d_), body(std::move(body_)), is_cone(cone), label(std::move(label_)) {
    if (d < 1) throw std::invalid_argument("AcceptanceSet: d >= 1 required");
    if (body.main_dim != flat_dim())
        throw std::invalid_argument("AcceptanceSet: body must live over n*d coordinates");
    if (is_empty(body)) throw std::invalid_argument("AcceptanceSet: empty body");
    if (!has_nonzero_barrier(body))
        throw std::invalid_argument("AcceptanceSet: body is the whole space");
    for (Index j = 0; j < flat_dim(); ++j)
        if (!recession_ray_check(body, unit(flat_dim(), j)))
            throw std::invalid_argument("AcceptanceSet: not monotone in every coordinate");
}

AcceptanceSet worst_case(const ScenarioSpace& space, Index d) {
    std::vector<Index> coords(static_cast<std::size_t>(d));
    std::iota(coords.begin(), coords.end(), Index{0});
    return worst_case(space, d, coords);
}

AcceptanceSet worst_case(const ScenarioSpace& space, Index d, const std::vector<Index>& coords) {
    if (coords.empty()) throw std::invalid_argument("worst_case: at least one constrained coordinate");
    const Index n = space.size();
    LiftedPolyhedron body;
    body.main_dim = n * d;
    for (Index s = 0; s < n; ++s)
        for (Index i : coords) {
            if (i < 0 || i >= d) throw std::invalid_argument("worst_case: coordinate out of range");
            body.add_row(unit(n * d, s * d + i), Relation::GreaterEq, Rational(0));
        }
    return AcceptanceSet(space, d, std::move(body), true, "worst_case");
}

AcceptanceSet expectation_set(const ScenarioSpace& space) {
    LiftedPolyhedron body;
    body.main_dim = space.size();
    body.add_row(space.probs(), Relation::GreaterEq, Rational(0));
    return AcceptanceSet(space, 1, std::move(body), true, "expectation");
}

AcceptanceSet expected_shortfall_set(const ScenarioSpace& space, Index d,
                                     const std::vector<Rational>& alpha) {
    if (static_cast<Index>(alpha.size()) != d)
        throw std::invalid_argument("expected_shortfall_set: one level per coordinate");
    for (const auto& a : alpha)
        if (a <= Rational(0) || a >= Rational(1))
            throw std::invalid_argument("expected_shortfall_set: levels must lie in (0, 1)");
    const Index n = space.size();
    // Lifts: level t_i at n*d + i, excess u_{s,i} at n*d + d + s*d + i.
    LiftedPolyhedron body;
    body.main_dim = n * d;
    body.lift_dim = d + n * d;
    const Index t0 = n * d;
    const Index u0 = n * d + d;
    const Index arity = body.main_dim + body.lift_dim;
    for (Index i = 0; i < d; ++i) {
        for (Index s = 0; s < n; ++s) {
            RVec r = RVec::Constant(arity, Rational(0));
            r(s * d + i) = Rational(1);
            r(u0 + s * d + i) = Rational(1);
            r(t0 + i) = Rational(-1);
            body.add_row(std::move(r), Relation::GreaterEq, Rational(0));  // u >= t - X
            body.add_row(unit(arity, u0 + s * d + i), Relation::GreaterEq, Rational(0));
        }
        RVec es = RVec::Constant(arity, Rational(0));
        es(t0 + i) = Rational(-1);
        for (Index s = 0; s < n; ++s) es(u0 + s * d + i) = space.prob(s) / alpha[static_cast<std::size_t>(i)];
        body.add_row(std::move(es), Relation::LessEq, Rational(0));
    }
    return AcceptanceSet(space, d, std::move(body), true, "expected_shortfall");
}

Rational es_value(const ScenarioSpace& space, const RVec& x, const Rational& alpha) {
    if (alpha <= Rational(0) || alpha >= Rational(1))
        throw std::invalid_argument("es_value: level must lie in (0, 1)");
    if (x.size() != space.size()) throw std::invalid_argument("es_value: one value per scenario");
    std::vector<Index> order(static_cast<std::size_t>(space.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return x(a) < x(b); });
    Rational mass(0), integral(0);
    for (Index s : order) {
        if (mass >= alpha) break;
        Rational take = space.prob(s);
        if (mass + take > alpha) take = alpha - mass;
        integral += take * x(s);
        mass += take;
    }
    Rational es = -integral / alpha;

    // Cross-check against the convention-free minimization form.
    const Index n = space.size();
    LinearProgram lp;  // variables: t, then u_s >= 0
    lp.sense = Sense::Minimize;
    lp.objective = RVec::Constant(n + 1, Rational(0));
    lp.objective(0) = Rational(-1);
    for (Index s = 0; s < n; ++s) lp.objective(1 + s) = space.prob(s) / alpha;
    lp.lower.assign(static_cast<std::size_t>(n + 1), std::nullopt);
    lp.upper.assign(static_cast<std::size_t>(n + 1), std::nullopt);
    for (Index s = 0; s < n; ++s) {
        lp.lower[static_cast<std::size_t>(1 + s)] = Rational(0);
        RVec r = RVec::Constant(n + 1, Rational(0));
        r(0) = Rational(-1);
        r(1 + s) = Rational(1);
        lp.add_row(std::move(r), Relation::GreaterEq, -x(s));  // u_s >= t - x_s
    }
    auto out = solve(lp);
    if (out.verdict != LpVerdict::Optimal || out.value != es)
        throw std::logic_error("es_value: quantile integration and minimization form disagree");
    return es;
}

AcceptanceSet minkowski_augment(const AcceptanceSet& A, const std::vector<LiftedPolyhedron>& cones) {
    if (cones.empty()) return A;
    LiftedPolyhedron body = A.body;
    bool cone = A.is_cone;
    for (const auto& C : cones) {
        if (C.main_dim != A.flat_dim())
            throw std::invalid_argument("minkowski_augment: summand dimension mismatch");
        RVec origin = RVec::Constant(C.main_dim, Rational(0));
        LiftedPolyhedron zero = LiftedPolyhedron::from_rows(C.main_dim, {});
        for (Index j = 0; j < C.main_dim; ++j)
            zero.add_row(unit(C.main_dim, j), Relation::Equal, Rational(0));
        if (!contains(C, zero).contains)
            throw std::invalid_argument("minkowski_augment: summand must contain the origin");
        body = minkowski_sum(body, C);
        for (const auto& row : C.rows)
            if (row.rhs != Rational(0)) cone = false;
    }
    return AcceptanceSet(A.space, A.d, std::move(body), cone, A.label + "+cones");
}

bool is_member(const AcceptanceSet& A, const RandomVector& X) {
    if (!(X.space == A.space) || X.dim() != A.d)
        throw std::invalid_argument("is_member: space or dimension mismatch");
    LiftedPolyhedron pinned = A.body;
    for (Index s = 0; s < A.space.size(); ++s)
        for (Index i = 0; i < A.d; ++i) {
            RVec e = RVec::Constant(A.body.arity(), Rational(0));
            e(A.flat_index(s, i)) = Rational(1);
            pinned.rows.push_back({std::move(e), Relation::Equal, X.values(s, i)});
        }
    return !is_empty(pinned);
}

}  // namespace svrisk
