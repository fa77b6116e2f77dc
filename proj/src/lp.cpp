#include "svrisk/lp.hpp"

#include <stdexcept>
#include <vector>

namespace svrisk {

namespace {

void validate(const LinearProgram& lp) {
    const Index n = lp.num_vars();
    for (const auto& row : lp.rows)
        if (row.coeffs.size() != n)
            throw std::invalid_argument("LinearProgram: row arity does not match objective");
    if (static_cast<Index>(lp.lower.size()) > n || static_cast<Index>(lp.upper.size()) > n)
        throw std::invalid_argument("LinearProgram: bound vector longer than variable count");
}

RVec unit_row(Index n, Index j, const Rational& v) {
    RVec r = RVec::Constant(n, Rational(0));
    r(j) = v;
    return r;
}

}  // namespace

LinearProgram normalized(const LinearProgram& lp) {
    validate(lp);
    LinearProgram out = lp;
    out.lower.clear();
    out.upper.clear();
    const Index n = lp.num_vars();
    for (Index j = 0; j < static_cast<Index>(lp.lower.size()); ++j)
        if (lp.lower[j])
            out.add_row(unit_row(n, j, Rational(1)), Relation::GreaterEq, *lp.lower[j]);
    for (Index j = 0; j < static_cast<Index>(lp.upper.size()); ++j)
        if (lp.upper[j])
            out.add_row(unit_row(n, j, Rational(1)), Relation::LessEq, *lp.upper[j]);
    return out;
}

namespace {

// Dense exact tableau simplex. Free variables are split into nonnegative
// pairs; every kept row gets an identity column (its slack when usable,
// otherwise an artificial), so basis inverses stay readable for duals.
class SimplexTableau {
public:
    SimplexTableau(const LinearProgram& norm, bool maximize)
        : n_(norm.num_vars()), maximize_(maximize) {
        // Drop identically-zero rows up front; contradictory ones give an
        // immediate unit Farkas certificate.
        for (Index i = 0; i < static_cast<Index>(norm.rows.size()); ++i) {
            const auto& row = norm.rows[i];
            if (is_zero(row.coeffs)) {
                const bool ok = (row.rel == Relation::LessEq && row.rhs >= Rational(0)) ||
                                (row.rel == Relation::GreaterEq && row.rhs <= Rational(0)) ||
                                (row.rel == Relation::Equal && row.rhs.is_zero());
                if (!ok) {
                    trivially_infeasible_row_ = i;
                    trivially_infeasible_sign_ =
                        row.rel == Relation::GreaterEq
                            ? 1
                            : (row.rel == Relation::LessEq ? -1 : row.rhs.sign());
                }
            } else {
                kept_.push_back(i);
            }
        }
        norm_rows_ = static_cast<Index>(norm.rows.size());
    }

    LpOutcome run(const LinearProgram& norm) {
        if (trivially_infeasible_row_ >= 0) {
            LpOutcome out;
            out.verdict = LpVerdict::Infeasible;
            out.farkas = RVec::Constant(norm_rows_, Rational(0));
            out.farkas(trivially_infeasible_row_) = Rational(trivially_infeasible_sign_);
            return out;
        }
        build(norm);
        const Index p1 = m_ + 1;
        const Index p2 = m_;
        run_phase(p1, /*ban_artificials=*/false);
        if (!(-tab_(p1, ncols_)).is_zero()) return infeasible_outcome();
        drive_out_artificials();
        std::optional<Index> unbounded_col = run_phase(p2, /*ban_artificials=*/true);
        if (unbounded_col) return unbounded_outcome(*unbounded_col);
        return optimal_outcome(norm);
    }

private:
    void build(const LinearProgram& norm) {
        m_ = static_cast<Index>(kept_.size());
        // Columns: split variable pairs, then slacks, then artificials.
        Index ncols = 2 * n_;
        slack_col_.assign(m_, -1);
        sgn_.assign(m_, 1);
        for (Index k = 0; k < m_; ++k) {
            const auto& row = norm.rows[kept_[k]];
            if (row.rhs < Rational(0)) sgn_[k] = -1;
            if (row.rel != Relation::Equal) slack_col_[k] = ncols++;
        }
        id_col_.assign(m_, -1);
        art_first_ = ncols;
        for (Index k = 0; k < m_; ++k) {
            const auto& row = norm.rows[kept_[k]];
            const int slack_coef =
                row.rel == Relation::Equal ? 0 : sgn_[k] * (row.rel == Relation::LessEq ? 1 : -1);
            id_col_[k] = slack_coef == 1 ? slack_col_[k] : ncols++;
        }
        ncols_ = ncols;

        tab_ = RMat::Constant(m_ + 2, ncols_ + 1, Rational(0));
        basis_.assign(m_, -1);
        for (Index k = 0; k < m_; ++k) {
            const auto& row = norm.rows[kept_[k]];
            const Rational s(sgn_[k]);
            for (Index j = 0; j < n_; ++j) {
                tab_(k, 2 * j) = s * row.coeffs(j);
                tab_(k, 2 * j + 1) = -s * row.coeffs(j);
            }
            if (slack_col_[k] >= 0)
                tab_(k, slack_col_[k]) = Rational(sgn_[k] * (row.rel == Relation::LessEq ? 1 : -1));
            tab_(k, id_col_[k]) = Rational(1);
            tab_(k, ncols_) = s * row.rhs;
            basis_[k] = id_col_[k];
        }
        // Phase-2 reduced costs (artificials cost 0, initial basics cost 0).
        for (Index j = 0; j < n_; ++j) {
            Rational c = maximize_ ? -norm.objective(j) : norm.objective(j);
            tab_(m_, 2 * j) = c;
            tab_(m_, 2 * j + 1) = -c;
        }
        // Phase-1 reduced costs: cost 1 on artificials, then price out the
        // artificial basics.
        for (Index j = art_first_; j < ncols_; ++j) tab_(m_ + 1, j) = Rational(1);
        for (Index k = 0; k < m_; ++k)
            if (basis_[k] >= art_first_)
                for (Index j = 0; j <= ncols_; ++j) tab_(m_ + 1, j) -= tab_(k, j);
    }

    void pivot(Index r, Index c) {
        const Rational p = tab_(r, c);
        for (Index j = 0; j <= ncols_; ++j) tab_(r, j) /= p;
        for (Index i = 0; i < m_ + 2; ++i) {
            if (i == r || tab_(i, c).is_zero()) continue;
            const Rational f = tab_(i, c);
            for (Index j = 0; j <= ncols_; ++j) tab_(i, j) -= f * tab_(r, j);
        }
        basis_[r] = c;
    }

    // Bland's rule throughout. Returns the entering column when the phase
    // detects unboundedness, nothing on optimality.
    std::optional<Index> run_phase(Index obj_row, bool ban_artificials) {
        const Index limit = ban_artificials ? art_first_ : ncols_;
        for (;;) {
            Index enter = -1;
            for (Index j = 0; j < limit; ++j) {
                if (tab_(obj_row, j) < Rational(0)) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return std::nullopt;
            Index leave = -1;
            Rational best_ratio;
            for (Index i = 0; i < m_; ++i) {
                if (tab_(i, enter) <= Rational(0)) continue;
                Rational ratio = tab_(i, ncols_) / tab_(i, enter);
                if (leave < 0 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return enter;
            pivot(leave, enter);
        }
    }

    // Rows left with an artificial basic after a zero phase-1 optimum are
    // either pivotable onto a real column or identically redundant (all real
    // entries zero), in which case they stay inert for the rest of the solve.
    void drive_out_artificials() {
        for (Index k = 0; k < m_; ++k) {
            if (basis_[k] < art_first_) continue;
            for (Index j = 0; j < art_first_; ++j) {
                if (!tab_(k, j).is_zero()) {
                    pivot(k, j);
                    break;
                }
            }
        }
    }

    LpOutcome infeasible_outcome() const {
        LpOutcome out;
        out.verdict = LpVerdict::Infeasible;
        out.farkas = RVec::Constant(norm_rows_, Rational(0));
        for (Index k = 0; k < m_; ++k) {
            const Rational cost = id_col_[k] >= art_first_ ? Rational(1) : Rational(0);
            const Rational y = cost - tab_(m_ + 1, id_col_[k]);
            out.farkas(kept_[k]) = Rational(sgn_[k]) * y;
        }
        return out;
    }

    LpOutcome unbounded_outcome(Index enter) const {
        LpOutcome out;
        out.verdict = LpVerdict::Unbounded;
        RVec ray_std = RVec::Constant(ncols_, Rational(0));
        ray_std(enter) = Rational(1);
        for (Index k = 0; k < m_; ++k) ray_std(basis_[k]) = -tab_(k, enter);
        out.ray = RVec::Constant(n_, Rational(0));
        for (Index j = 0; j < n_; ++j) out.ray(j) = ray_std(2 * j) - ray_std(2 * j + 1);
        return out;
    }

    LpOutcome optimal_outcome(const LinearProgram& norm) const {
        LpOutcome out;
        out.verdict = LpVerdict::Optimal;
        out.primal = RVec::Constant(n_, Rational(0));
        RVec z = RVec::Constant(ncols_, Rational(0));
        for (Index k = 0; k < m_; ++k) z(basis_[k]) = tab_(k, ncols_);
        for (Index j = 0; j < n_; ++j) out.primal(j) = z(2 * j) - z(2 * j + 1);
        out.value = norm.objective.dot(out.primal);
        out.dual = RVec::Constant(norm_rows_, Rational(0));
        for (Index k = 0; k < m_; ++k) {
            const Rational y = -tab_(m_, id_col_[k]);
            out.dual(kept_[k]) = Rational(maximize_ ? -sgn_[k] : sgn_[k]) * y;
        }
        return out;
    }

    Index n_;
    bool maximize_;
    Index norm_rows_ = 0;
    std::vector<Index> kept_;
    Index trivially_infeasible_row_ = -1;
    int trivially_infeasible_sign_ = 0;

    Index m_ = 0;
    Index ncols_ = 0;
    Index art_first_ = 0;
    RMat tab_;
    std::vector<Index> basis_;
    std::vector<Index> slack_col_;
    std::vector<Index> id_col_;
    std::vector<int> sgn_;
};

}  // namespace

LpOutcome solve(const LinearProgram& lp) {
    LinearProgram norm = normalized(lp);
    SimplexTableau tableau(norm, lp.sense == Sense::Maximize);
    return tableau.run(norm);
}

bool verify_certificates(const LinearProgram& lp, const LpOutcome& out) {
    LinearProgram norm = normalized(lp);
    const Index n = norm.num_vars();
    const Index m = static_cast<Index>(norm.rows.size());
    const bool maximize = norm.sense == Sense::Maximize;

    auto row_value = [&](const RVec& x, Index i) { return norm.rows[i].coeffs.dot(x); };

    switch (out.verdict) {
        case LpVerdict::Optimal: {
            if (out.primal.size() != n || out.dual.size() != m) return false;
            for (Index i = 0; i < m; ++i) {
                const Rational v = row_value(out.primal, i);
                const auto& row = norm.rows[i];
                if (row.rel == Relation::GreaterEq && v < row.rhs) return false;
                if (row.rel == Relation::LessEq && v > row.rhs) return false;
                if (row.rel == Relation::Equal && v != row.rhs) return false;
            }
            // Dual sign conventions (mirrored under maximization).
            for (Index i = 0; i < m; ++i) {
                const auto rel = norm.rows[i].rel;
                const Rational& y = out.dual(i);
                if (rel == Relation::GreaterEq && (maximize ? y > Rational(0) : y < Rational(0)))
                    return false;
                if (rel == Relation::LessEq && (maximize ? y < Rational(0) : y > Rational(0)))
                    return false;
            }
            // Dual feasibility A'y = c (all variables free) and zero gap.
            RVec combo = RVec::Constant(n, Rational(0));
            Rational dual_obj(0);
            for (Index i = 0; i < m; ++i) {
                if (out.dual(i).is_zero()) continue;
                combo += out.dual(i) * norm.rows[i].coeffs;
                dual_obj += out.dual(i) * norm.rows[i].rhs;
            }
            if (combo != norm.objective) return false;
            return dual_obj == out.value && norm.objective.dot(out.primal) == out.value;
        }
        case LpVerdict::Unbounded: {
            if (out.ray.size() != n || is_zero(out.ray)) return false;
            for (Index i = 0; i < m; ++i) {
                const Rational v = row_value(out.ray, i);
                const auto& row = norm.rows[i];
                if (row.rel == Relation::GreaterEq && v < Rational(0)) return false;
                if (row.rel == Relation::LessEq && v > Rational(0)) return false;
                if (row.rel == Relation::Equal && !v.is_zero()) return false;
            }
            const Rational drift = norm.objective.dot(out.ray);
            return maximize ? drift > Rational(0) : drift < Rational(0);
        }
        case LpVerdict::Infeasible: {
            if (out.farkas.size() != m || is_zero(out.farkas)) return false;
            RVec combo = RVec::Constant(n, Rational(0));
            Rational rhs(0);
            for (Index i = 0; i < m; ++i) {
                const Rational& lam = out.farkas(i);
                const auto rel = norm.rows[i].rel;
                if (rel == Relation::GreaterEq && lam < Rational(0)) return false;
                if (rel == Relation::LessEq && lam > Rational(0)) return false;
                if (lam.is_zero()) continue;
                combo += lam * norm.rows[i].coeffs;
                rhs += lam * norm.rows[i].rhs;
            }
            return is_zero(combo) && rhs > Rational(0);
        }
    }
    return false;
}

}  // namespace svrisk
