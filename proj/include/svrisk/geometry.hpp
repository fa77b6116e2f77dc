#pragma once

#include "svrisk/lp.hpp"

#include <optional>
#include <string>
#include <vector>

namespace svrisk {

/// A finite linear system over main variables plus auxiliary lift variables.
/// The represented set is the projection onto the main variables:
///   { x : exists y, rows hold at (x, y) }.
/// Closed and convex by construction.
struct LiftedPolyhedron {
    Index main_dim = 0;
    Index lift_dim = 0;
    std::vector<LinearRow> rows;  // arity main_dim + lift_dim

    Index arity() const { return main_dim + lift_dim; }
    void add_row(RVec coeffs, Relation rel, Rational rhs);

    /// Lift-free system from explicit rows over the main variables.
    static LiftedPolyhedron from_rows(Index main_dim, std::vector<LinearRow> rows);
    /// The nonnegative orthant of the given dimension.
    static LiftedPolyhedron orthant(Index dim);
};

/// {x : <normal, x> >= offset} with nonzero normal.
struct Halfspace {
    RVec normal;
    Rational offset;
};

/// Canonical form: scaled so the first nonzero coefficient has absolute
/// value one; orientation (>=) preserved.
Halfspace normalize(Halfspace h);
bool halfspace_less(const Halfspace& a, const Halfspace& b);

/// Explicit projection onto the main variables. Empty sets are a distinct
/// outcome; the whole space shows up as an empty facet list with empty=false.
struct Projection {
    bool empty = false;
    std::vector<Halfspace> facets;  // irredundant, normalized, sorted
};

/// Lower support function inf_{x in P} <psi, x>; +inf on the empty set,
/// -inf outside the barrier cone.
ExtReal support(const LiftedPolyhedron& P, const RVec& psi);

bool in_barrier(const LiftedPolyhedron& P, const RVec& psi);

bool is_empty(const LiftedPolyhedron& P);

/// A point of P (projected to main variables) when nonempty.
std::optional<RVec> any_point(const LiftedPolyhedron& P);

/// Fourier-Motzkin elimination of the lift variables with LP-certified
/// redundancy pruning after every elimination step.
Projection project(const LiftedPolyhedron& P);

struct ContainsResult {
    bool contains = false;
    std::optional<RVec> witness;        // point of Q outside P, on failure
    std::optional<Halfspace> violated;  // the separating facet of P
};

/// Set containment projection(Q) subseteq projection(P), decided by
/// minimizing each facet functional of P over Q.
ContainsResult contains(const LiftedPolyhedron& P, const LiftedPolyhedron& Q);

/// True iff v is a recession direction of nonempty P.
bool recession_ray_check(const LiftedPolyhedron& P, const RVec& v);

/// Quasi-interior membership for a polyhedral cone C (all rhs zero):
/// v in C and <g, v> > 0 for every facet normal g (the generators of C+).
bool qint_member(const LiftedPolyhedron& C, const RVec& v);

/// Minkowski sum as a lifted system (one lift block per summand).
LiftedPolyhedron minkowski_sum(const LiftedPolyhedron& P, const LiftedPolyhedron& Q);

/// Deterministic textual form of a facet list, for golden tests.
std::string canonical_text(const Projection& proj);

/// The feasibility LP over (main, lift) with the given objective.
LinearProgram polyhedron_lp(const LiftedPolyhedron& P, const RVec& objective_main,
                            Sense sense = Sense::Minimize);

}  // namespace svrisk
