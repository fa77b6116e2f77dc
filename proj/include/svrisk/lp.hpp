#pragma once

#include "svrisk/linalg.hpp"

#include <optional>
#include <vector>

namespace svrisk {

enum class Relation { LessEq, GreaterEq, Equal };
enum class Sense { Minimize, Maximize };

struct LinearRow {
    RVec coeffs;
    Relation rel = Relation::GreaterEq;
    Rational rhs;
};

/// A linear program over free variables. Optional per-variable bounds are
/// rewritten as ordinary rows before solving, so dual and Farkas vectors
/// are indexed by the rows of normalized(): user rows first, then lower-bound
/// rows, then upper-bound rows (each in variable order).
struct LinearProgram {
    Sense sense = Sense::Minimize;
    RVec objective;
    std::vector<LinearRow> rows;
    std::vector<std::optional<Rational>> lower;
    std::vector<std::optional<Rational>> upper;

    Index num_vars() const { return objective.size(); }
    void add_row(RVec coeffs, Relation rel, Rational rhs) {
        rows.push_back({std::move(coeffs), rel, std::move(rhs)});
    }
};

enum class LpVerdict { Optimal, Infeasible, Unbounded };

struct LpOutcome {
    LpVerdict verdict = LpVerdict::Infeasible;
    Rational value;  // Optimal only
    RVec primal;     // Optimal only
    RVec dual;       // Optimal only; one multiplier per normalized row
    RVec ray;        // Unbounded only
    RVec farkas;     // Infeasible only; one multiplier per normalized row
};

/// Bounds rewritten as rows; objective and sense untouched.
LinearProgram normalized(const LinearProgram& lp);

/// Exact two-phase simplex with Bland's rule. Deterministic; certificates
/// satisfy verify_certificates by construction.
LpOutcome solve(const LinearProgram& lp);

/// Checks an outcome's certificates against the program by direct
/// substitution. Exact, no tolerance:
///  - Optimal: primal feasibility, dual sign conditions, A'y = c, y'b = value = c'x.
///  - Unbounded: nonzero recession ray with strictly improving objective.
///  - Infeasible: nonzero sign-feasible combination with zero lhs and positive rhs.
bool verify_certificates(const LinearProgram& lp, const LpOutcome& out);

}  // namespace svrisk
