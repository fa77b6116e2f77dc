#include "svrisk/risk.hpp"

#include "doctest.h"

using namespace svrisk;

namespace {

ScenarioSpace two_equal() { return ScenarioSpace(rvec({Rational(1, 2), Rational(1, 2)})); }
ScenarioSpace point_space() { return ScenarioSpace(rvec({Rational(1)})); }

RandomVector scalar_rv(const ScenarioSpace& sp, std::initializer_list<Rational> vals) {
    RMat m(sp.size(), 1);
    Index s = 0;
    for (const auto& v : vals) m(s++, 0) = v;
    return RandomVector(sp, std::move(m));
}

RandomVector det_rv(const ScenarioSpace& sp, std::initializer_list<Rational> coords) {
    RVec m(static_cast<Index>(coords.size()));
    Index i = 0;
    for (const auto& v : coords) m(i++) = v;
    return RandomVector::constant(sp, m);
}

ExtReal region_support(const RiskRegion& reg, const RVec& w) {
    LiftedPolyhedron P;
    P.main_dim = w.size();
    for (const auto& f : reg.facets) P.add_row(f.normal, Relation::GreaterEq, f.offset);
    if (reg.empty) {
        P.add_row(RVec::Constant(w.size(), Rational(0)), Relation::GreaterEq, Rational(1));
    }
    return support(P, w);
}

}  // namespace

TEST_CASE("worst case scalar region and scalarization") {
    auto sp = two_equal();
    auto A = worst_case(sp, 1);
    auto X = scalar_rv(sp, {Rational(1), Rational(-1)});
    auto reg = risk_region(A, X);
    REQUIRE_FALSE(reg.empty);
    REQUIRE(reg.facets.size() == 1);
    CHECK(reg.facets[0].normal(0) == Rational(1));
    CHECK(reg.facets[0].offset == Rational(1));

    Direction w(rvec({1}));
    CHECK(rho(A, X, w) == ExtReal(Rational(1)));

    // Translativity: shifting by the constant 2 drops the value by 2.
    auto shifted = scalar_rv(sp, {Rational(3), Rational(1)});
    CHECK(rho(A, shifted, w) == ExtReal(Rational(-1)));
}

TEST_CASE("partial orthant in three coordinates") {
    auto sp = point_space();
    auto A = worst_case(sp, 3, {0, 1});
    std::vector<Index> mask{0, 1};

    auto reg0 = risk_region(A, det_rv(sp, {Rational(0), Rational(0), Rational(0)}), mask);
    REQUIRE(reg0.facets.size() == 2);
    CHECK(canonical_text(Projection{reg0.empty, reg0.facets}) == "(0,1) >= 0\n(1,0) >= 0\n");

    auto X = det_rv(sp, {Rational(1), Rational(-1), Rational(0)});
    auto reg1 = risk_region(A, X, mask);
    CHECK(canonical_text(Projection{reg1.empty, reg1.facets}) == "(0,1) >= 1\n(1,0) >= -1\n");

    CHECK(rho(A, X, Direction(rvec({1, 0})), mask) == ExtReal(Rational(-1)));
    CHECK(rho(A, X, Direction(rvec({0, 1})), mask) == ExtReal(Rational(1)));
    auto zero = det_rv(sp, {Rational(0), Rational(0), Rational(0)});
    CHECK(rho(A, zero, Direction(rvec({1, 0})), mask) == ExtReal(Rational(0)));
    CHECK(rho(A, zero, Direction(rvec({0, 1})), mask) == ExtReal(Rational(0)));
}

TEST_CASE("expected shortfall region at zero is the orthant") {
    auto sp = two_equal();
    auto A = expected_shortfall_set(sp, 2, {Rational(1, 2), Rational(1, 3)});
    RMat zeros = RMat::Constant(2, 2, Rational(0));
    auto reg = risk_region(A, RandomVector(sp, zeros));
    CHECK(canonical_text(Projection{reg.empty, reg.facets}) == "(0,1) >= 0\n(1,0) >= 0\n");
}

TEST_CASE("rho equals the support of the region on probe directions") {
    auto sp = two_equal();
    auto A = expected_shortfall_set(sp, 1, {Rational(1, 2)});
    auto X = scalar_rv(sp, {Rational(1), Rational(-1)});
    auto reg = risk_region(A, X);
    for (const auto& wv : {rvec({1})}) {
        Direction w{wv};
        CHECK(rho(A, X, w) == region_support(reg, w.w));
    }
    CHECK(rho(A, X, Direction(rvec({1}))) == ExtReal(Rational(1)));
}

TEST_CASE("region reconstruction from facet scalarizations") {
    auto sp = two_equal();
    auto A = worst_case(sp, 2);
    RMat vals(2, 2);
    vals << Rational(1), Rational(-2), Rational(-1), Rational(3);
    RandomVector X(sp, vals);
    auto reg = risk_region(A, X);
    REQUIRE_FALSE(reg.empty);
    LiftedPolyhedron rebuilt;
    rebuilt.main_dim = 2;
    for (const auto& f : reg.facets) {
        Direction w{f.normal};
        auto val = rho(A, X, w);
        REQUIRE(val.is_finite());
        // Direction normalization rescales; recompute the offset to match.
        Rational scale = f.normal.sum();
        rebuilt.add_row(f.normal / scale, Relation::GreaterEq, val.value());
    }
    LiftedPolyhedron original;
    original.main_dim = 2;
    for (const auto& f : reg.facets) original.add_row(f.normal, Relation::GreaterEq, f.offset);
    CHECK(contains(rebuilt, original).contains);
    CHECK(contains(original, rebuilt).contains);
}

TEST_CASE("rho_dual matches rho with a verified density") {
    auto sp = two_equal();
    SUBCASE("worst case") {
        auto A = worst_case(sp, 1);
        auto X = scalar_rv(sp, {Rational(1), Rational(-1)});
        auto rd = rho_dual(A, X, Direction(rvec({1})));
        REQUIRE(rd.value.is_finite());
        CHECK(rd.value.value() == Rational(1));
        REQUIRE(rd.cert.has_value());
        CHECK(rd.cert->sigma == Rational(0));
        CHECK(rd.cert->Z.values(0, 0) == Rational(0));
        CHECK(rd.cert->Z.values(1, 0) == Rational(2));
    }
    SUBCASE("expected shortfall dual density capped at w/alpha") {
        auto A = expected_shortfall_set(sp, 1, {Rational(1, 2)});
        auto X = scalar_rv(sp, {Rational(1), Rational(-1)});
        auto rd = rho_dual(A, X, Direction(rvec({1})));
        REQUIRE(rd.value.is_finite());
        CHECK(rd.value.value() == Rational(1));
        REQUIRE(rd.cert.has_value());
        CHECK(rd.cert->sigma == Rational(0));
        CHECK(rd.cert->Z.values(0, 0) <= Rational(2));
        CHECK(rd.cert->Z.values(1, 0) <= Rational(2));
        CHECK(expectation(rd.cert->Z)(0) == Rational(1));
    }
    SUBCASE("primal and dual agree on a grid") {
        auto A = expected_shortfall_set(sp, 1, {Rational(1, 3)});
        const Rational grid[] = {Rational(-2), Rational(0), Rational(1)};
        for (const auto& a : grid)
            for (const auto& b : grid) {
                auto X = scalar_rv(sp, {a, b});
                auto p = rho(A, X, Direction(rvec({1})));
                auto d = rho_dual(A, X, Direction(rvec({1})));
                CHECK(p == d.value);
            }
    }
}

TEST_CASE("infeasible and pruned directions") {
    auto sp = point_space();
    auto A = worst_case(sp, 3, {0, 1});
    std::vector<Index> mask{2};
    // Coordinate 1 is negative and cannot be repaired through coordinate 2.
    auto X = det_rv(sp, {Rational(0), Rational(-1), Rational(0)});
    CHECK(rho(A, X, Direction(rvec({1})), mask) == ExtReal::pos_inf());
    CHECK(risk_region(A, X, mask).empty);
    auto rd = rho_dual(A, X, Direction(rvec({1})), mask);
    CHECK(rd.value == ExtReal::neg_inf());
    CHECK_FALSE(rd.cert.has_value());

    // Free coordinate, so the scalarization is unbounded below.
    auto Y = det_rv(sp, {Rational(0), Rational(0), Rational(0)});
    CHECK(rho(A, Y, Direction(rvec({1})), mask) == ExtReal::neg_inf());
    CHECK(rho_dual(A, Y, Direction(rvec({1})), mask).value == ExtReal::neg_inf());
}

TEST_CASE("monotonicity of regions and scalarizations") {
    auto sp = two_equal();
    auto A = expected_shortfall_set(sp, 1, {Rational(1, 2)});
    auto lo = scalar_rv(sp, {Rational(0), Rational(-2)});
    auto hi = scalar_rv(sp, {Rational(1), Rational(-1)});
    Direction w(rvec({1}));
    CHECK(rho(A, hi, w).value() <= rho(A, lo, w).value());
    auto reg_hi = risk_region(A, hi);
    auto reg_lo = risk_region(A, lo);
    LiftedPolyhedron Phi, Plo;
    Phi.main_dim = Plo.main_dim = 1;
    for (const auto& f : reg_hi.facets) Phi.add_row(f.normal, Relation::GreaterEq, f.offset);
    for (const auto& f : reg_lo.facets) Plo.add_row(f.normal, Relation::GreaterEq, f.offset);
    CHECK(contains(Phi, Plo).contains);
}

TEST_CASE("finiteness diagnostics") {
    SUBCASE("worst case, full mask") {
        auto sp = two_equal();
        auto A = worst_case(sp, 1);
        auto rep = finiteness_report(A, full_mask(1));
        CHECK(rep.sum_is_whole_space);
        CHECK(rep.mask_meets_qint_cone);
        CHECK(rep.mask_meets_qint_recession);
        CHECK(rep.finite_guaranteed);
    }
    SUBCASE("partial orthant, partial mask") {
        auto sp = point_space();
        auto A = worst_case(sp, 3, {0, 1});
        auto rep = finiteness_report(A, {0, 1});
        CHECK(rep.sum_is_whole_space);
        CHECK_FALSE(rep.mask_meets_qint_cone);  // masked constants vanish on coordinate 2
        CHECK(rep.mask_meets_qint_recession);
        CHECK(rep.finite_guaranteed);
    }
    SUBCASE("mask confined to the free coordinate guarantees nothing") {
        auto sp = point_space();
        auto A = worst_case(sp, 3, {0, 1});
        auto rep = finiteness_report(A, {2});
        CHECK_FALSE(rep.sum_is_whole_space);
        CHECK_FALSE(rep.mask_meets_qint_cone);
        CHECK_FALSE(rep.mask_meets_qint_recession);
        CHECK_FALSE(rep.finite_guaranteed);
    }
    SUBCASE("expectation set") {
        auto sp = two_equal();
        auto A = expectation_set(sp);
        auto rep = finiteness_report(A, full_mask(1));
        CHECK(rep.sum_is_whole_space);
        CHECK(rep.mask_meets_qint_recession);
        CHECK(rep.finite_guaranteed);
    }
}

TEST_CASE("direction normalization") {
    Direction w(rvec({2, 2}));
    CHECK(w.w(0) == Rational(1, 2));
    CHECK_THROWS_AS(Direction(rvec({0, 0})), std::invalid_argument);
    CHECK_THROWS_AS(Direction(rvec({1, -1})), std::invalid_argument);
}
