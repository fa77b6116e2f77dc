#include "svrisk/geometry.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace svrisk {

void LiftedPolyhedron::add_row(RVec coeffs, Relation rel, Rational rhs) {
    if (coeffs.size() != arity())
        throw std::invalid_argument("LiftedPolyhedron: row arity mismatch");
    rows.push_back({std::move(coeffs), rel, std::move(rhs)});
}

LiftedPolyhedron LiftedPolyhedron::from_rows(Index main_dim, std::vector<LinearRow> rows) {
    LiftedPolyhedron p;
    p.main_dim = main_dim;
    for (auto& r : rows) p.add_row(std::move(r.coeffs), r.rel, std::move(r.rhs));
    return p;
}

LiftedPolyhedron LiftedPolyhedron::orthant(Index dim) {
    LiftedPolyhedron p;
    p.main_dim = dim;
    for (Index j = 0; j < dim; ++j) {
        RVec row = RVec::Constant(dim, Rational(0));
        row(j) = Rational(1);
        p.add_row(std::move(row), Relation::GreaterEq, Rational(0));
    }
    return p;
}

Halfspace normalize(Halfspace h) {
    for (Index j = 0; j < h.normal.size(); ++j) {
        if (!h.normal(j).is_zero()) {
            const Rational scale = h.normal(j).abs();
            h.normal /= scale;
            h.offset /= scale;
            return h;
        }
    }
    throw std::invalid_argument("Halfspace: zero normal");
}

bool halfspace_less(const Halfspace& a, const Halfspace& b) {
    for (Index j = 0; j < a.normal.size(); ++j) {
        if (a.normal(j) != b.normal(j)) return a.normal(j) < b.normal(j);
    }
    return a.offset < b.offset;
}

LinearProgram polyhedron_lp(const LiftedPolyhedron& P, const RVec& objective_main, Sense sense) {
    if (objective_main.size() != P.main_dim)
        throw std::invalid_argument("polyhedron_lp: objective arity mismatch");
    LinearProgram lp;
    lp.sense = sense;
    lp.objective = RVec::Constant(P.arity(), Rational(0));
    lp.objective.head(P.main_dim) = objective_main;
    lp.rows = P.rows;
    return lp;
}

ExtReal support(const LiftedPolyhedron& P, const RVec& psi) {
    auto out = solve(polyhedron_lp(P, psi, Sense::Minimize));
    switch (out.verdict) {
        case LpVerdict::Optimal: return ExtReal(out.value);
        case LpVerdict::Unbounded: return ExtReal::neg_inf();
        case LpVerdict::Infeasible: return ExtReal::pos_inf();
    }
    throw std::logic_error("support: unreachable");
}

bool in_barrier(const LiftedPolyhedron& P, const RVec& psi) {
    return support(P, psi) > ExtReal::neg_inf();
}

bool is_empty(const LiftedPolyhedron& P) {
    return solve(polyhedron_lp(P, RVec::Constant(P.main_dim, Rational(0)))).verdict ==
           LpVerdict::Infeasible;
}

std::optional<RVec> any_point(const LiftedPolyhedron& P) {
    auto out = solve(polyhedron_lp(P, RVec::Constant(P.main_dim, Rational(0))));
    if (out.verdict != LpVerdict::Optimal) return std::nullopt;
    return RVec(out.primal.head(P.main_dim));
}

namespace {

struct GeRow {
    RVec coeffs;  // full arity; >= rhs
    Rational rhs;
};

// Scale so the first nonzero coefficient has absolute value 1.
void normalize_ge_row(GeRow& r) {
    for (Index j = 0; j < r.coeffs.size(); ++j) {
        if (!r.coeffs(j).is_zero()) {
            const Rational s = r.coeffs(j).abs();
            r.coeffs /= s;
            r.rhs /= s;
            return;
        }
    }
}

std::vector<GeRow> to_ge_rows(const LiftedPolyhedron& P) {
    std::vector<GeRow> out;
    for (const auto& row : P.rows) {
        if (row.rel != Relation::LessEq) out.push_back({row.coeffs, row.rhs});
        if (row.rel != Relation::GreaterEq) out.push_back({-row.coeffs, -row.rhs});
    }
    return out;
}

// Syntactic cleanup: drop vacuous zero rows, merge parallel rows keeping the
// tightest rhs. A zero row with positive rhs flags the whole system empty.
bool dedup_rows(std::vector<GeRow>& rows) {
    std::map<std::string, std::size_t> seen;
    std::vector<GeRow> out;
    for (auto& r : rows) {
        if (is_zero(r.coeffs)) {
            if (r.rhs > Rational(0)) return false;
            continue;
        }
        normalize_ge_row(r);
        std::ostringstream key;
        for (Index j = 0; j < r.coeffs.size(); ++j) key << r.coeffs(j) << ",";
        auto [it, fresh] = seen.emplace(key.str(), out.size());
        if (fresh) {
            out.push_back(std::move(r));
        } else if (r.rhs > out[it->second].rhs) {
            out[it->second].rhs = std::move(r.rhs);
        }
    }
    rows = std::move(out);
    return true;
}

// Remove every row implied by the others (LP-certified, sequential).
void lp_prune(std::vector<GeRow>& rows, Index arity) {
    for (std::size_t i = 0; i < rows.size();) {
        LinearProgram lp;
        lp.objective = rows[i].coeffs;
        for (std::size_t k = 0; k < rows.size(); ++k)
            if (k != i) lp.add_row(rows[k].coeffs, Relation::GreaterEq, rows[k].rhs);
        auto out = solve(lp);
        if (out.verdict == LpVerdict::Optimal && out.value >= rows[i].rhs) {
            rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
    (void)arity;
}

}  // namespace

Projection project(const LiftedPolyhedron& P) {
    Projection result;
    if (is_empty(P)) {
        result.empty = true;
        return result;
    }
    std::vector<GeRow> rows = to_ge_rows(P);
    if (!dedup_rows(rows)) {
        result.empty = true;  // unreachable for feasible P, kept for safety
        return result;
    }

    std::vector<Index> remaining;
    for (Index k = 0; k < P.lift_dim; ++k) remaining.push_back(P.main_dim + k);

    while (!remaining.empty()) {
        lp_prune(rows, P.arity());
        // Pick the variable with the cheapest positive*negative pairing.
        std::size_t best = 0;
        long best_cost = -1;
        for (std::size_t c = 0; c < remaining.size(); ++c) {
            long pos = 0, neg = 0;
            for (const auto& r : rows) {
                const int s = r.coeffs(remaining[c]).sign();
                if (s > 0) ++pos;
                else if (s < 0) ++neg;
            }
            const long cost = pos * neg;
            if (best_cost < 0 || cost < best_cost) {
                best_cost = cost;
                best = c;
            }
        }
        const Index var = remaining[best];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));

        std::vector<GeRow> next;
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const int s = rows[i].coeffs(var).sign();
            if (s > 0) pos.push_back(i);
            else if (s < 0) neg.push_back(i);
            else next.push_back(rows[i]);
        }
        for (std::size_t ip : pos) {
            for (std::size_t in : neg) {
                const Rational p = rows[ip].coeffs(var);
                const Rational q = -rows[in].coeffs(var);
                GeRow combined{q * rows[ip].coeffs + p * rows[in].coeffs,
                               q * rows[ip].rhs + p * rows[in].rhs};
                next.push_back(std::move(combined));
            }
        }
        rows = std::move(next);
        if (!dedup_rows(rows)) {
            result.empty = true;
            return result;
        }
    }
    lp_prune(rows, P.arity());

    for (const auto& r : rows) {
        Halfspace h{RVec(r.coeffs.head(P.main_dim)), r.rhs};
        result.facets.push_back(normalize(std::move(h)));
    }
    std::sort(result.facets.begin(), result.facets.end(), halfspace_less);
    return result;
}

ContainsResult contains(const LiftedPolyhedron& P, const LiftedPolyhedron& Q) {
    if (P.main_dim != Q.main_dim)
        throw std::invalid_argument("contains: main dimension mismatch");
    ContainsResult res;
    if (is_empty(Q)) {
        res.contains = true;
        return res;
    }
    if (is_empty(P)) {
        res.contains = false;
        res.witness = any_point(Q);
        return res;
    }
    const Projection hp = project(P);
    for (const auto& h : hp.facets) {
        auto out = solve(polyhedron_lp(Q, h.normal, Sense::Minimize));
        if (out.verdict == LpVerdict::Optimal) {
            if (out.value >= h.offset) continue;
            res.contains = false;
            res.witness = RVec(out.primal.head(Q.main_dim));
            res.violated = h;
            return res;
        }
        if (out.verdict == LpVerdict::Unbounded) {
            // Push a feasible point along the improving ray until it leaves P.
            RVec x0 = *any_point(Q);
            RVec ray = out.ray.head(Q.main_dim);
            const Rational drift = h.normal.dot(ray);  // < 0
            const Rational gap = h.normal.dot(x0) - h.offset + Rational(1);
            const Rational t = gap > Rational(0) ? gap / (-drift) : Rational(0);
            res.contains = false;
            res.witness = RVec(x0 + t * ray);
            res.violated = h;
            return res;
        }
        throw std::logic_error("contains: feasible Q turned infeasible");
    }
    res.contains = true;
    return res;
}

bool recession_ray_check(const LiftedPolyhedron& P, const RVec& v) {
    if (v.size() != P.main_dim)
        throw std::invalid_argument("recession_ray_check: arity mismatch");
    if (is_empty(P)) throw std::invalid_argument("recession_ray_check: empty polyhedron");
    // A direction of the projection lifts to a direction of the full system.
    LinearProgram lp;
    lp.objective = RVec::Constant(P.lift_dim, Rational(0));
    for (const auto& row : P.rows) {
        RVec lift_part = row.coeffs.tail(P.lift_dim);
        const Rational shift = -row.coeffs.head(P.main_dim).dot(v);
        lp.add_row(std::move(lift_part), row.rel, shift);
    }
    return solve(lp).verdict == LpVerdict::Optimal;
}

bool qint_member(const LiftedPolyhedron& C, const RVec& v) {
    for (const auto& row : C.rows)
        if (!row.rhs.is_zero())
            throw std::invalid_argument("qint_member: not a cone (nonzero rhs)");
    if (v.size() != C.main_dim) throw std::invalid_argument("qint_member: arity mismatch");
    const Projection facets = project(C);
    // The facet normals generate the dual cone; strict positivity against
    // each of them is strict positivity against all of C+ \ {0}.
    for (const auto& h : facets.facets)
        if (h.normal.dot(v) <= Rational(0)) return false;
    return true;
}

LiftedPolyhedron minkowski_sum(const LiftedPolyhedron& P, const LiftedPolyhedron& Q) {
    if (P.main_dim != Q.main_dim)
        throw std::invalid_argument("minkowski_sum: main dimension mismatch");
    const Index d = P.main_dim;
    LiftedPolyhedron s;
    s.main_dim = d;
    s.lift_dim = d + P.lift_dim + Q.lift_dim;
    // Variables: [x | u | P-lifts | Q-lifts]; P holds at (u, .), Q at (x-u, .).
    for (const auto& row : P.rows) {
        RVec c = RVec::Constant(s.arity(), Rational(0));
        c.segment(d, d) = row.coeffs.head(d);
        c.segment(2 * d, P.lift_dim) = row.coeffs.tail(P.lift_dim);
        s.add_row(std::move(c), row.rel, row.rhs);
    }
    for (const auto& row : Q.rows) {
        RVec c = RVec::Constant(s.arity(), Rational(0));
        c.head(d) = row.coeffs.head(d);
        c.segment(d, d) = -row.coeffs.head(d);
        c.segment(2 * d + P.lift_dim, Q.lift_dim) = row.coeffs.tail(Q.lift_dim);
        s.add_row(std::move(c), row.rel, row.rhs);
    }
    return s;
}

std::string canonical_text(const Projection& proj) {
    std::ostringstream os;
    if (proj.empty) {
        os << "empty\n";
        return os.str();
    }
    for (const auto& h : proj.facets) {
        os << "(";
        for (Index j = 0; j < h.normal.size(); ++j) {
            if (j) os << ",";
            os << h.normal(j);
        }
        os << ") >= " << h.offset << "\n";
    }
    return os.str();
}

}  // namespace svrisk
