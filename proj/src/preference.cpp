#include "svrisk/preference.hpp"

#include <set>
#include <stdexcept>
#include <string>

namespace svrisk {

namespace {

std::string dir_key(const Direction& w) {
    std::string key;
    for (Index j = 0; j < w.w.size(); ++j) {
        key += w.w(j).str();
        key += ',';
    }
    return key;
}

Direction uniform_direction(Index k) { return Direction(RVec::Constant(k, Rational(1))); }

SeparationCertificate build_certificate(const AcceptanceSet& A, const RandomVector& first,
                                        const RandomVector& second, const std::vector<Index>& mask,
                                        const ContainsResult& failure) {
    Direction w = failure.violated ? Direction(failure.violated->normal)
                                   : uniform_direction(static_cast<Index>(mask.size()));
    RVec m = failure.witness ? *failure.witness
                             : RVec::Constant(static_cast<Index>(mask.size()), Rational(0));
    return SeparationCertificate{std::move(m), w, rho(A, first, w, mask), rho(A, second, w, mask)};
}

PrefRelation relation_from(bool first_at_least, bool second_at_least) {
    if (first_at_least && second_at_least) return PrefRelation::Equivalent;
    if (first_at_least) return PrefRelation::FirstAtLeast;
    if (second_at_least) return PrefRelation::SecondAtLeast;
    return PrefRelation::Incomparable;
}

}  // namespace

PreferenceVerdict compare(const AcceptanceSet& A, const RandomVector& X, const RandomVector& Y,
                          const std::vector<Index>& mask) {
    auto Sx = risk_system(A, X, mask);
    auto Sy = risk_system(A, Y, mask);
    auto x_holds = contains(Sx, Sy);  // region(X) contains region(Y)
    auto y_holds = contains(Sy, Sx);
    PreferenceVerdict v;
    v.relation = relation_from(x_holds.contains, y_holds.contains);
    if (!x_holds.contains) v.first_fails = build_certificate(A, X, Y, mask, x_holds);
    if (!y_holds.contains) v.second_fails = build_certificate(A, Y, X, mask, y_holds);
    return v;
}

PreferenceVerdict compare(const AcceptanceSet& A, const RandomVector& X, const RandomVector& Y) {
    return compare(A, X, Y, full_mask(A.d));
}

std::vector<Direction> probe_grid(Index k) {
    if (k < 1) throw std::invalid_argument("probe_grid: k >= 1 required");
    std::vector<Direction> grid;
    std::set<std::string> seen;
    // All nonnegative integer vectors summing to q, q = 1..4.
    for (int q = 1; q <= 4; ++q) {
        std::vector<int> num(static_cast<std::size_t>(k), 0);
        auto emit = [&]() {
            RVec w(k);
            for (Index j = 0; j < k; ++j) w(j) = Rational(num[static_cast<std::size_t>(j)], q);
            Direction d{std::move(w)};
            if (seen.insert(dir_key(d)).second) grid.push_back(std::move(d));
        };
        // Enumerate compositions of q into k parts.
        auto rec = [&](auto&& self, Index pos, int left) -> void {
            if (pos == k - 1) {
                num[static_cast<std::size_t>(pos)] = left;
                if (left >= 0) emit();
                return;
            }
            for (int v = 0; v <= left; ++v) {
                num[static_cast<std::size_t>(pos)] = v;
                self(self, pos + 1, left - v);
            }
        };
        rec(rec, 0, q);
    }
    return grid;
}

MultiUtilityRecord multi_utility_check(const AcceptanceSet& A, const RandomVector& X,
                                       const RandomVector& Y, const std::vector<Index>& mask) {
    const Index k = static_cast<Index>(mask.size());
    auto rx = risk_region(A, X, mask);
    auto ry = risk_region(A, Y, mask);
    std::vector<Direction> dirs;
    std::set<std::string> seen;
    auto push = [&](Direction d) {
        if (seen.insert(dir_key(d)).second) dirs.push_back(std::move(d));
    };
    for (const auto& f : rx.facets) push(Direction(f.normal));
    for (const auto& f : ry.facets) push(Direction(f.normal));
    for (auto& d : probe_grid(k)) push(std::move(d));

    MultiUtilityRecord rec;
    bool first_ok = true, second_ok = true;
    for (const auto& w : dirs) {
        auto vx = rho(A, X, w, mask);
        auto vy = rho(A, Y, w, mask);
        if (vx > vy) first_ok = false;   // lower scalarized risk means preferred
        if (vy > vx) second_ok = false;
        if (rho_dual(A, X, w, mask).value == ExtReal::neg_inf())
            rec.pruned.push_back(w);
        else
            rec.used.push_back(w);
    }
    rec.scalar = relation_from(first_ok, second_ok);
    rec.geometric = compare(A, X, Y, mask).relation;
    rec.agree = rec.scalar == rec.geometric;
    return rec;
}

MultiUtilityRecord multi_utility_check(const AcceptanceSet& A, const RandomVector& X,
                                       const RandomVector& Y) {
    return multi_utility_check(A, X, Y, full_mask(A.d));
}

ExtReal utility_value(const AcceptanceSet& A, const RandomVector& X, const Direction& pi,
                      const std::vector<Index>& mask, bool dual) {
    return dual ? -rho_dual(A, X, pi, mask).value : -rho(A, X, pi, mask);
}

ExtReal utility_value(const AcceptanceSet& A, const RandomVector& X, const Direction& pi,
                      bool dual) {
    return utility_value(A, X, pi, full_mask(A.d), dual);
}

}  // namespace svrisk
