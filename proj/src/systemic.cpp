#include "svrisk/systemic.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace svrisk {

namespace {

void validate(const Aggregator& L) {
    if (L.pieces.empty()) throw std::invalid_argument("Aggregator: d >= 1 required");
    for (const auto& coord : L.pieces) {
        if (coord.empty()) throw std::invalid_argument("Aggregator: every coordinate needs a piece");
        for (const auto& p : coord)
            if (p.slope < Rational(0))
                throw std::invalid_argument("Aggregator: slopes must be nonnegative");
    }
}

}  // namespace

Aggregator Aggregator::weighted_losses(const std::vector<Rational>& alpha) {
    Aggregator L;
    for (const auto& a : alpha) {
        if (a <= Rational(1))
            throw std::invalid_argument("weighted_losses: amplification must exceed 1");
        L.pieces.push_back({{Rational(1), Rational(0)}, {a, Rational(0)}});
    }
    validate(L);
    return L;
}

Aggregator Aggregator::custom(std::vector<std::vector<AffinePiece>> pieces) {
    Aggregator L{std::move(pieces)};
    validate(L);
    return L;
}

bool Aggregator::is_cone() const {
    for (const auto& coord : pieces)
        for (const auto& p : coord)
            if (p.intercept != Rational(0)) return false;
    return true;
}

Rational aggregate(const Aggregator& L, const RVec& x) {
    if (x.size() != L.dim()) throw std::invalid_argument("aggregate: dimension mismatch");
    Rational total(0);
    for (Index i = 0; i < L.dim(); ++i) {
        const auto& coord = L.pieces[static_cast<std::size_t>(i)];
        Rational best = coord[0].slope * x(i) + coord[0].intercept;
        for (const auto& p : coord) best = std::min(best, p.slope * x(i) + p.intercept);
        total += best;
    }
    return total;
}

AcceptanceSet preimage_acceptance(const Aggregator& L, const ScenarioSpace& space) {
    const Index d = L.dim();
    const Index n = space.size();
    LiftedPolyhedron body;
    body.main_dim = n * d;
    body.lift_dim = n * d;  // lower-envelope value per scenario and coordinate
    const Index arity = body.arity();
    for (Index s = 0; s < n; ++s)
        for (Index i = 0; i < d; ++i)
            for (const auto& p : L.pieces[static_cast<std::size_t>(i)]) {
                RVec r = RVec::Constant(arity, Rational(0));
                r(s * d + i) = p.slope;
                r(n * d + s * d + i) = Rational(-1);
                body.add_row(std::move(r), Relation::GreaterEq, -p.intercept);
            }
    RVec erow = RVec::Constant(arity, Rational(0));
    for (Index s = 0; s < n; ++s)
        for (Index i = 0; i < d; ++i) erow(n * d + s * d + i) = space.prob(s);
    body.add_row(std::move(erow), Relation::GreaterEq, Rational(0));
    return AcceptanceSet(space, d, std::move(body), L.is_cone(), "systemic");
}

ExtReal conjugate(const Aggregator& L, const RVec& z) {
    if (z.size() != L.dim()) throw std::invalid_argument("conjugate: dimension mismatch");
    Rational total(0);
    for (Index i = 0; i < L.dim(); ++i) {
        // min z_i * x - u  s.t.  u <= slope * x + intercept for every piece.
        LinearProgram lp;
        lp.sense = Sense::Minimize;
        lp.objective = rvec({z(i), Rational(-1)});
        lp.lower.assign(2, std::nullopt);
        lp.upper.assign(2, std::nullopt);
        for (const auto& p : L.pieces[static_cast<std::size_t>(i)])
            lp.add_row(rvec({p.slope, Rational(-1)}), Relation::GreaterEq, -p.intercept);
        auto out = solve(lp);
        if (out.verdict == LpVerdict::Unbounded) return ExtReal::neg_inf();
        if (out.verdict != LpVerdict::Optimal) throw std::logic_error("conjugate: infeasible piece LP");
        total += out.value;
    }
    return ExtReal(std::move(total));
}

ExtReal aggregated_support(const Aggregator& L, const ScenarioSpace& space, const RandomVector& Z) {
    if (!L.is_cone())
        throw std::invalid_argument("aggregated_support: cone aggregators only");
    if (!(Z.space == space) || Z.dim() != L.dim())
        throw std::invalid_argument("aggregated_support: density mismatch");
    const Index d = L.dim();
    const Index n = space.size();

    auto A = preimage_acceptance(L, space);
    RVec psi(n * d);
    for (Index s = 0; s < n; ++s)
        for (Index i = 0; i < d; ++i) psi(s * d + i) = space.prob(s) * Z.values(s, i);
    auto direct = support(A.body, psi);

    // Scaling route: some lambda >= 0 fits every entry between the extreme
    // slopes of its coordinate.
    LinearProgram lp;
    lp.sense = Sense::Minimize;
    lp.objective = rvec({Rational(0)});
    lp.lower = {Rational(0)};
    lp.upper = {std::nullopt};
    for (Index s = 0; s < n; ++s)
        for (Index i = 0; i < d; ++i) {
            const auto& coord = L.pieces[static_cast<std::size_t>(i)];
            Rational lo = coord[0].slope, hi = coord[0].slope;
            for (const auto& p : coord) {
                lo = std::min(lo, p.slope);
                hi = std::max(hi, p.slope);
            }
            lp.add_row(rvec({lo}), Relation::LessEq, Z.values(s, i));
            lp.add_row(rvec({hi}), Relation::GreaterEq, Z.values(s, i));
        }
    auto scaled = solve(lp).verdict == LpVerdict::Optimal ? ExtReal(Rational(0))
                                                          : ExtReal::neg_inf();
    if (direct != scaled)
        throw std::logic_error("aggregated_support: support LP and scaling test disagree");
    return direct;
}

}  // namespace svrisk
