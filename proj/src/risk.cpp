#include "svrisk/risk.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace svrisk {

namespace {

void check_mask(const AcceptanceSet& A, const std::vector<Index>& mask) {
    if (mask.empty()) throw std::invalid_argument("mask: at least one active coordinate");
    for (std::size_t t = 0; t < mask.size(); ++t) {
        if (mask[t] < 0 || mask[t] >= A.d) throw std::invalid_argument("mask: coordinate out of range");
        if (t > 0 && mask[t] <= mask[t - 1])
            throw std::invalid_argument("mask: coordinates must be strictly increasing");
    }
}

void check_position(const AcceptanceSet& A, const RandomVector& X) {
    if (!(X.space == A.space) || X.dim() != A.d)
        throw std::invalid_argument("risk: space or dimension mismatch");
}

// Sign bounds for one dual multiplier per body row (minimization duals).
void dual_sign_bounds(const LiftedPolyhedron& body, LinearProgram& lp) {
    const std::size_t nrows = body.rows.size();
    lp.lower.assign(nrows, std::nullopt);
    lp.upper.assign(nrows, std::nullopt);
    for (std::size_t k = 0; k < nrows; ++k) {
        if (body.rows[k].rel == Relation::GreaterEq) lp.lower[k] = Rational(0);
        if (body.rows[k].rel == Relation::LessEq) lp.upper[k] = Rational(0);
    }
}

// Row of the functional-recovery map: coefficient of multiplier k on
// coordinate col of the body.
RVec functional_column(const LiftedPolyhedron& body, Index col) {
    RVec r(static_cast<Index>(body.rows.size()));
    for (Index k = 0; k < r.size(); ++k) r(k) = body.rows[static_cast<std::size_t>(k)].coeffs(col);
    return r;
}

}  // namespace

Direction::Direction(RVec w_) : w(std::move(w_)) {
    Rational total(0);
    for (Index j = 0; j < w.size(); ++j) {
        if (w(j) < Rational(0)) throw std::invalid_argument("Direction: nonnegative components required");
        total += w(j);
    }
    if (total == Rational(0)) throw std::invalid_argument("Direction: zero direction");
    w /= total;
}

std::vector<Index> full_mask(Index d) {
    std::vector<Index> mask(static_cast<std::size_t>(d));
    std::iota(mask.begin(), mask.end(), Index{0});
    return mask;
}

LiftedPolyhedron risk_system(const AcceptanceSet& A, const RandomVector& X,
                             const std::vector<Index>& mask) {
    check_mask(A, mask);
    check_position(A, X);
    const Index k = static_cast<Index>(mask.size());
    const Index n = A.space.size();
    LiftedPolyhedron sys;
    sys.main_dim = k;
    sys.lift_dim = A.body.lift_dim;
    for (const auto& row : A.body.rows) {
        RVec coeffs = RVec::Constant(k + sys.lift_dim, Rational(0));
        for (Index t = 0; t < k; ++t)
            for (Index s = 0; s < n; ++s)
                coeffs(t) += row.coeffs(A.flat_index(s, mask[static_cast<std::size_t>(t)]));
        for (Index l = 0; l < sys.lift_dim; ++l) coeffs(k + l) = row.coeffs(A.flat_dim() + l);
        Rational rhs = row.rhs;
        for (Index s = 0; s < n; ++s)
            for (Index i = 0; i < A.d; ++i) rhs -= row.coeffs(A.flat_index(s, i)) * X.values(s, i);
        sys.rows.push_back({std::move(coeffs), row.rel, std::move(rhs)});
    }
    return sys;
}

RiskRegion risk_region(const AcceptanceSet& A, const RandomVector& X,
                       const std::vector<Index>& mask) {
    auto proj = project(risk_system(A, X, mask));
    return RiskRegion{mask, proj.empty, std::move(proj.facets)};
}

RiskRegion risk_region(const AcceptanceSet& A, const RandomVector& X) {
    return risk_region(A, X, full_mask(A.d));
}

ExtReal rho(const AcceptanceSet& A, const RandomVector& X, const Direction& pi,
            const std::vector<Index>& mask) {
    if (pi.w.size() != static_cast<Index>(mask.size()))
        throw std::invalid_argument("rho: direction must match the mask width");
    auto out = solve(polyhedron_lp(risk_system(A, X, mask), pi.w));
    switch (out.verdict) {
        case LpVerdict::Optimal: return ExtReal(out.value);
        case LpVerdict::Infeasible: return ExtReal::pos_inf();
        case LpVerdict::Unbounded: return ExtReal::neg_inf();
    }
    throw std::logic_error("rho: unreachable");
}

ExtReal rho(const AcceptanceSet& A, const RandomVector& X, const Direction& pi) {
    return rho(A, X, pi, full_mask(A.d));
}

RhoDual rho_dual(const AcceptanceSet& A, const RandomVector& X, const Direction& pi,
                 const std::vector<Index>& mask) {
    check_mask(A, mask);
    check_position(A, X);
    if (pi.w.size() != static_cast<Index>(mask.size()))
        throw std::invalid_argument("rho_dual: direction must match the mask width");
    const auto& body = A.body;
    const Index nrows = static_cast<Index>(body.rows.size());
    const Index n = A.space.size();

    // One multiplier per body row. The induced functional psi is the
    // multiplier combination of the main columns; the objective folds
    // sigma-candidate and -psi(X) into the row constants.
    LinearProgram lp;
    lp.sense = Sense::Maximize;
    lp.objective = RVec(nrows);
    for (Index k = 0; k < nrows; ++k) {
        const auto& row = body.rows[static_cast<std::size_t>(k)];
        Rational c = row.rhs;
        for (Index s = 0; s < n; ++s)
            for (Index i = 0; i < A.d; ++i) c -= row.coeffs(A.flat_index(s, i)) * X.values(s, i);
        lp.objective(k) = std::move(c);
    }
    dual_sign_bounds(body, lp);
    for (Index l = 0; l < body.lift_dim; ++l)
        lp.add_row(functional_column(body, A.flat_dim() + l), Relation::Equal, Rational(0));
    for (std::size_t t = 0; t < mask.size(); ++t) {
        RVec r = RVec::Constant(nrows, Rational(0));
        for (Index s = 0; s < n; ++s) r += functional_column(body, A.flat_index(s, mask[t]));
        lp.add_row(std::move(r), Relation::Equal, pi.w(static_cast<Index>(t)));
    }

    auto out = solve(lp);
    if (out.verdict == LpVerdict::Unbounded) return {ExtReal::pos_inf(), std::nullopt};
    if (out.verdict == LpVerdict::Infeasible) return {ExtReal::neg_inf(), std::nullopt};

    RVec psi = RVec::Constant(A.flat_dim(), Rational(0));
    for (Index k = 0; k < nrows; ++k)
        psi += out.primal(k) * RVec(body.rows[static_cast<std::size_t>(k)].coeffs.head(A.flat_dim()));
    RMat zvals(n, A.d);
    for (Index s = 0; s < n; ++s)
        for (Index i = 0; i < A.d; ++i) {
            zvals(s, i) = psi(A.flat_index(s, i)) / A.space.prob(s);
            if (zvals(s, i) < Rational(0))
                throw std::logic_error("rho_dual: certificate density is not nonnegative");
        }
    RandomVector Z(A.space, std::move(zvals));
    RVec e = expectation(Z);
    for (std::size_t t = 0; t < mask.size(); ++t)
        if (e(mask[t]) != pi.w(static_cast<Index>(t)))
            throw std::logic_error("rho_dual: certificate expectation drifted off the direction");
    auto sigma = support(body, psi);
    if (!sigma.is_finite() || ExtReal(sigma.value() - pairing(X, Z)) != ExtReal(out.value))
        throw std::logic_error("rho_dual: support recomputation disagrees with the dual value");
    return {ExtReal(out.value), DualElement{std::move(Z), pi, sigma.value()}};
}

RhoDual rho_dual(const AcceptanceSet& A, const RandomVector& X, const Direction& pi) {
    return rho_dual(A, X, pi, full_mask(A.d));
}

FinitenessReport finiteness_report(const AcceptanceSet& A, const std::vector<Index>& mask) {
    check_mask(A, mask);
    const auto& body = A.body;
    const Index nrows = static_cast<Index>(body.rows.size());
    const Index n = A.space.size();
    FinitenessReport rep;

    // (i) body + masked constants = everything, i.e. no nonzero barrier
    // functional of the body annihilates all masked constants. Probe each
    // +-unit value of one functional coordinate; the rest stays free.
    bool found = false;
    for (Index c = 0; c < A.flat_dim() && !found; ++c)
        for (int sgn : {1, -1}) {
            LinearProgram lp;
            lp.sense = Sense::Minimize;
            lp.objective = RVec::Constant(nrows, Rational(0));
            dual_sign_bounds(body, lp);
            for (Index l = 0; l < body.lift_dim; ++l)
                lp.add_row(functional_column(body, A.flat_dim() + l), Relation::Equal, Rational(0));
            for (Index j : mask) {
                RVec r = RVec::Constant(nrows, Rational(0));
                for (Index s = 0; s < n; ++s) r += functional_column(body, A.flat_index(s, j));
                lp.add_row(std::move(r), Relation::Equal, Rational(0));
            }
            lp.add_row(functional_column(body, c), Relation::Equal, Rational(sgn));
            if (solve(lp).verdict == LpVerdict::Optimal) {
                found = true;
                break;
            }
        }
    rep.sum_is_whole_space = !found;

    // (ii) the masked indicator against the monotonicity orthant; on the
    // orthant the quasi-interior is exactly the strictly positive vectors
    // and the indicator is the maximal-support element of the mask space.
    RVec indicator = RVec::Constant(A.flat_dim(), Rational(0));
    for (Index s = 0; s < n; ++s)
        for (Index j : mask) indicator(A.flat_index(s, j)) = Rational(1);
    rep.mask_meets_qint_cone = qint_member(LiftedPolyhedron::orthant(A.flat_dim()), indicator);

    // (iii) some masked constant pairs strictly with every facet normal of
    // the recession cone of the body.
    LiftedPolyhedron rec = body;
    for (auto& row : rec.rows) row.rhs = Rational(0);
    auto facets = project(rec).facets;
    if (facets.empty()) {
        rep.mask_meets_qint_recession = true;
    } else {
        const Index k = static_cast<Index>(mask.size());
        LinearProgram lp;  // variables m_t in [-1, 1], then the margin t
        lp.sense = Sense::Maximize;
        lp.objective = RVec::Constant(k + 1, Rational(0));
        lp.objective(k) = Rational(1);
        lp.lower.assign(static_cast<std::size_t>(k + 1), Rational(-1));
        lp.upper.assign(static_cast<std::size_t>(k + 1), Rational(1));
        lp.lower[static_cast<std::size_t>(k)] = std::nullopt;
        for (const auto& f : facets) {
            RVec r = RVec::Constant(k + 1, Rational(0));
            for (Index t = 0; t < k; ++t)
                for (Index s = 0; s < n; ++s)
                    r(t) += f.normal(A.flat_index(s, mask[static_cast<std::size_t>(t)]));
            r(k) = Rational(-1);
            lp.add_row(std::move(r), Relation::GreaterEq, Rational(0));  // g . v >= margin
        }
        auto out = solve(lp);
        rep.mask_meets_qint_recession =
            out.verdict == LpVerdict::Optimal && out.value > Rational(0);
    }

    rep.finite_guaranteed =
        rep.sum_is_whole_space || rep.mask_meets_qint_cone || rep.mask_meets_qint_recession;
    return rep;
}

}  // namespace svrisk
