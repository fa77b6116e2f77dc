// Exit-gate suite: one line per criterion, nonzero exit on any failure.
// Usage: acceptance_suite <cli-binary> <fixtures-dir>

#include "svrisk/instance.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace svrisk;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& what, const std::string& detail = "") {
    std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << " - " << what;
    if (!ok && !detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
}

void run_criterion(int n, const std::string& what, const std::function<void()>& body) {
    try {
        body();
        report(n, true, what);
    } catch (const std::exception& e) {
        report(n, false, what, e.what());
    }
}

struct CheckFail : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw CheckFail(msg);
}

std::mt19937 rng(20240817);

Rational rand_rational(int lo = -8, int hi = 8, int max_den = 4) {
    std::uniform_int_distribution<int> num(lo, hi);
    std::uniform_int_distribution<int> den(1, max_den);
    return Rational(num(rng), den(rng));
}

ScenarioSpace rand_space(Index n) {
    std::uniform_int_distribution<int> wgt(1, 5);
    RVec raw(n);
    Rational total(0);
    for (Index s = 0; s < n; ++s) {
        raw(s) = Rational(wgt(rng));
        total += raw(s);
    }
    return ScenarioSpace(RVec(raw / total));
}

RandomVector rand_vector(const ScenarioSpace& sp, Index d) {
    RMat vals(sp.size(), d);
    for (Index s = 0; s < sp.size(); ++s)
        for (Index i = 0; i < d; ++i) vals(s, i) = rand_rational();
    return RandomVector(sp, std::move(vals));
}

Direction rand_direction(Index k) {
    std::uniform_int_distribution<int> num(0, 4);
    RVec w = RVec::Constant(k, Rational(0));
    bool nonzero = false;
    for (Index j = 0; j < k; ++j) {
        int v = num(rng);
        w(j) = Rational(v);
        nonzero = nonzero || v > 0;
    }
    if (!nonzero) w(0) = Rational(1);
    return Direction(std::move(w));
}

Rational rand_alpha() {
    std::uniform_int_distribution<int> num(1, 5);
    std::uniform_int_distribution<int> den(6, 9);
    return Rational(num(rng), den(rng));
}

// One random acceptance set of each of the four static families.
AcceptanceSet rand_family(int family, const ScenarioSpace& sp, Index d) {
    switch (family) {
        case 0: return worst_case(sp, d);
        case 1: return expectation_set(sp);
        case 2: {
            std::vector<Rational> alpha;
            for (Index i = 0; i < d; ++i) alpha.push_back(rand_alpha());
            return expected_shortfall_set(sp, d, alpha);
        }
        default: {
            std::vector<Rational> alpha;
            std::uniform_int_distribution<int> num(5, 12);
            for (Index i = 0; i < d; ++i) alpha.push_back(Rational(num(rng), 4));
            return preimage_acceptance(Aggregator::weighted_losses(alpha), sp);
        }
    }
}

std::string region_text(const RiskRegion& reg) {
    return canonical_text(Projection{reg.empty, reg.facets});
}

MarketModel binomial_model(bool costs) {
    std::vector<EventTree::Node> nodes;
    nodes.push_back({-1, Rational(1)});
    nodes.push_back({0, Rational(1, 2)});
    nodes.push_back({0, Rational(1, 2)});
    EventTree tree(std::move(nodes));
    auto terminal = tree_to_terminal_space(tree);
    auto frictionless = [](const Rational& price) {
        std::vector<LinearRow> rows;
        rows.push_back({rvec({Rational(1), price}), Relation::GreaterEq, Rational(0)});
        return SolvencyCone::from_rows(2, std::move(rows));
    };
    auto band = [](const Rational& price) {
        Rational bid = Rational(9, 10) * price, ask = Rational(11, 10) * price;
        return SolvencyCone::from_generators(
            2, {rvec({1, 0}), rvec({0, 1}), rvec({-bid, Rational(1)}), rvec({ask, Rational(-1)})});
    };
    std::vector<SolvencyCone> cones;
    for (const auto& price : {Rational(1), Rational(2), Rational(1, 2)})
        cones.push_back(costs ? band(price) : frictionless(price));
    return MarketModel(std::move(tree), 2, std::move(cones), worst_case(terminal.space, 2));
}

RandomVector shift_on_mask(const RandomVector& X, const std::vector<Index>& mask,
                           const Rational& amount) {
    RMat vals = X.values;
    for (Index s = 0; s < X.scenarios(); ++s)
        for (Index j : mask) vals(s, j) += amount;
    return RandomVector(X.space, std::move(vals));
}

// --- criteria ---

void criterion1() {
    ScenarioSpace one(rvec({Rational(1)}));
    auto A = worst_case(one, 3, {0, 1});
    std::vector<Index> mask{0, 1};
    auto zero = RandomVector::constant(one, rvec({0, 0, 0}));
    auto X = RandomVector::constant(one, rvec({1, -1, 0}));
    require(region_text(risk_region(A, zero, mask)) == "(0,1) >= 0\n(1,0) >= 0\n",
            "zero region mismatch");
    require(region_text(risk_region(A, X, mask)) == "(0,1) >= 1\n(1,0) >= -1\n",
            "shifted region mismatch");
    require(compare(A, zero, X, mask).relation == PrefRelation::Incomparable,
            "expected incomparable verdict");
}

void criterion2() {
    ScenarioSpace one(rvec({Rational(1)}));
    auto A = worst_case(one, 3, {0, 1});
    std::vector<Index> mask{1, 2};
    for (int t = 0; t < 50; ++t) {
        auto X = rand_vector(one, 3);
        auto Y = rand_vector(one, 3);
        require(compare(A, X, Y, mask).relation != PrefRelation::Incomparable,
                "incomparable pair found in the complete instance");
    }
}

void criterion3() {
    for (Index d = 1; d <= 3; ++d) {
        auto sp = rand_space(2 + d);
        std::vector<Rational> alpha;
        for (Index i = 0; i < d; ++i) alpha.push_back(rand_alpha());
        auto A = expected_shortfall_set(sp, d, alpha);
        RMat zeros = RMat::Constant(sp.size(), d, Rational(0));
        auto reg = risk_region(A, RandomVector(sp, zeros));
        auto orth = project(LiftedPolyhedron::orthant(d));
        require(region_text(reg) == canonical_text(orth), "ES region at zero is not the orthant");
    }
    for (int t = 0; t < 100; ++t) {
        Index n = 2 + static_cast<Index>(t % 4);
        auto sp = rand_space(n);
        RVec x(n);
        for (Index s = 0; s < n; ++s) x(s) = rand_rational();
        (void)es_value(sp, x, rand_alpha());  // throws if the two forms disagree
    }
}

void criterion4() {
    for (int t = 0; t < 200; ++t) {
        int family = t % 4;
        Index d = family == 1 ? 1 : 1 + (t / 4) % 2;
        auto sp = rand_space(2 + t % 2);
        auto A = rand_family(family, sp, d);
        auto X = rand_vector(sp, d);
        auto w = rand_direction(d);
        auto p = rho(A, X, w);
        auto rd = rho_dual(A, X, w);
        require(p == rd.value, "primal and dual scalarizations differ");
        if (p.is_finite()) require(rd.cert.has_value(), "finite value without certificate");
    }
}

void criterion5() {
    for (int family = 0; family < 4; ++family) {
        for (int t = 0; t < 100; ++t) {
            Index d = family == 1 ? 1 : 1 + t % 2;
            auto sp = rand_space(2);
            auto A = rand_family(family, sp, d);
            auto X = rand_vector(sp, d);
            auto Y = rand_vector(sp, d);
            require(multi_utility_check(A, X, Y).agree,
                    "scalar and geometric verdicts disagree");
        }
    }
}

void criterion6() {
    for (int t = 0; t < 60; ++t) {
        Index d = 1 + t % 2;
        auto sp = rand_space(2 + t % 3);
        std::vector<Rational> alpha;
        for (Index i = 0; i < d; ++i) alpha.push_back(rand_alpha());
        auto A = expected_shortfall_set(sp, d, alpha);
        auto X = rand_vector(sp, d);
        auto w = rand_direction(d);
        auto rd = rho_dual(A, X, w);
        if (!rd.cert) continue;
        const auto& Z = rd.cert->Z;
        RVec e = expectation(Z);
        for (Index i = 0; i < d; ++i) require(e(i) == w.w(i), "E[Z] drifted off w");
        for (Index s = 0; s < sp.size(); ++s)
            for (Index i = 0; i < d; ++i) {
                require(Z.values(s, i) >= Rational(0), "negative density entry");
                require(Z.values(s, i) <= w.w(i) / alpha[static_cast<std::size_t>(i)],
                        "density exceeds w/alpha");
            }
    }
}

void criterion7() {
    for (bool costs : {false, true}) {
        auto model = binomial_model(costs);
        auto aug = augmented_acceptance(model);
        RMat claim(2, 2);
        claim << Rational(-3), Rational(0), Rational(0), Rational(0);
        RandomVector X(model.terminal.space, claim);
        auto reg = superreplication_region(model, X);
        require(!reg.empty && !reg.facets.empty(), "degenerate superreplication region");
        for (const auto& f : reg.facets) {
            Direction w(f.normal);
            require(rho(aug, X, w) == superreplication_dual_value(model, X, w),
                    "superreplication duality gap");
        }
        if (!costs) {
            Direction w(rvec({1, 1}));
            auto price = rho(aug, X, w);
            require(price == ExtReal(Rational(1, 2)),
                    "frictionless price off the hand-derived value");
            auto ps = find_pricing_system(model, w);
            require(ps.has_value(), "no risk-neutral system found");
            require(ps->Z.values(0, 0) == Rational(1, 3) && ps->Z.values(0, 1) == Rational(2, 3),
                    "risk-neutral density differs from q = 1/3");
        }
    }
}

void criterion8() {
    auto L = Aggregator::weighted_losses({Rational(2), Rational(3)});
    const Rational grid[] = {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2), Rational(3)};
    for (const auto& a : grid)
        for (const auto& b : grid) {
            bool inside = a >= Rational(1) && a <= Rational(2) && b >= Rational(1) && b <= Rational(3);
            auto want = inside ? ExtReal(Rational(0)) : ExtReal::neg_inf();
            require(conjugate(L, rvec({a, b})) == want, "conjugate leaves the box formula");
        }
    auto sp = rand_space(2);
    std::uniform_int_distribution<int> num(0, 10);
    for (int t = 0; t < 100; ++t) {
        RMat z(2, 2);
        for (Index s = 0; s < 2; ++s)
            for (Index i = 0; i < 2; ++i) z(s, i) = Rational(num(rng), 3);
        (void)aggregated_support(L, sp, RandomVector(sp, z));  // throws on route mismatch
    }
}

void criterion9(const fs::path& fixtures) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(fixtures))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    require(!files.empty(), "no fixtures found");
    for (const auto& file : files) {
        auto inst = load_instance(file.string());
        const auto& A = inst.acceptance;
        const auto& mask = inst.mask;
        const Index k = static_cast<Index>(mask.size());
        // The deliberately degenerate fixture breaks the properness
        // assumptions on purpose; it is exercised by the CLI corpus instead.
        bool degenerate = file.filename() == "pruned.json";

        if (A.is_cone) {
            RVec psi(A.flat_dim());
            for (Index c = 0; c < A.flat_dim(); ++c)
                psi(c) = A.space.prob(c / A.d) * (c % 2 == 0 ? Rational(1) : Rational(2));
            for (const auto& probe : {psi, RVec(-psi)}) {
                auto s = support(A.body, probe);
                require(s == ExtReal(Rational(0)) || s == ExtReal::neg_inf(),
                        "cone support outside {0, -inf} in " + file.filename().string());
            }
        }

        std::vector<const RandomVector*> vecs;
        for (const auto& [name, v] : inst.vectors) vecs.push_back(&v);
        for (const auto* Xp : vecs) {
            const auto& X = *Xp;
            auto sys = risk_system(A, X, mask);
            if (!is_empty(sys))
                for (Index t = 0; t < k; ++t) {
                    RVec e = RVec::Constant(k, Rational(0));
                    e(t) = Rational(1);
                    require(recession_ray_check(sys, e),
                            "region does not absorb the orthant in " + file.filename().string());
                }
            if (!degenerate) {
                auto reg = risk_region(A, X, mask);
                require(!reg.empty, "empty region in " + file.filename().string());
                require(!reg.facets.empty(), "full-space region in " + file.filename().string());
            }
            for (const auto& [wname, w] : inst.directions) {
                if (w.w.size() != k) continue;
                auto base = rho(A, X, w, mask);
                auto shifted = rho(A, shift_on_mask(X, mask, Rational(1)), w, mask);
                auto expected = base.is_finite() ? ExtReal(base.value() - Rational(1)) : base;
                require(shifted == expected, "translativity broke in " + file.filename().string());
                auto up = rho(A, shift_on_mask(X, full_mask(A.d), Rational(1)), w, mask);
                require(up <= base, "monotonicity broke in " + file.filename().string());
            }
        }
        if (vecs.size() >= 2 && !degenerate) {
            const auto& X = *vecs[0];
            const auto& Y = *vecs[1];
            auto sysX = risk_system(A, X, mask);
            auto sysY = risk_system(A, Y, mask);
            for (const auto& lam : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
                RMat mixv = lam * X.values + (Rational(1) - lam) * Y.values;
                auto mix_sys = risk_system(A, RandomVector(A.space, mixv), mask);
                auto scaled = [](LiftedPolyhedron P, const Rational& c) {
                    for (auto& row : P.rows) row.rhs *= c;
                    return P;
                };
                auto comb = minkowski_sum(scaled(sysX, lam), scaled(sysY, Rational(1) - lam));
                require(contains(mix_sys, comb).contains,
                        "convexity broke in " + file.filename().string());
            }
        }
    }
}

struct Invocation {
    std::string fixture;
    std::string args;
};

void criterion10(const std::string& cli, const fs::path& fixtures) {
    std::vector<Invocation> calls = {
        {"remark_ii.json", "region zero"},
        {"remark_ii.json", "region X"},
        {"remark_ii.json", "compare zero X"},
        {"remark_ii.json", "scalar X e1"},
        {"remark_ii.json", "scalar X e2 --dual"},
        {"remark_ii.json", "diag"},
        {"remark_iii.json", "compare X Y"},
        {"remark_iii.json", "diag"},
        {"worst_case.json", "region X"},
        {"worst_case.json", "scalar X w"},
        {"worst_case.json", "scalar X w --dual"},
        {"worst_case.json", "compare X Xshift"},
        {"es.json", "region zero"},
        {"es.json", "scalar X w --dual"},
        {"es.json", "diag"},
        {"expectation.json", "scalar X w"},
        {"expectation.json", "compare X neg"},
        {"expectation.json", "diag"},
        {"systemic.json", "region zero"},
        {"systemic.json", "scalar X w --dual"},
        {"systemic.json", "conjugate 1,1"},
        {"systemic.json", "conjugate 3,1"},
        {"systemic.json", "diag"},
        {"market_frictionless.json", "region claim"},
        {"market_frictionless.json", "cps w"},
        {"market_frictionless.json", "cps cash"},
        {"market_frictionless.json", "scalar claim w"},
        {"market_costs.json", "region claim"},
        {"market_costs.json", "cps w"},
        {"pruned.json", "region X"},
        {"pruned.json", "region Y"},
        {"pruned.json", "scalar Y w --dual"},
        {"pruned.json", "diag"},
    };
    fs::path tmp = fs::path("acceptance_cli_tmp");
    fs::remove_all(tmp);
    fs::create_directories(tmp);
    auto run_all = [&](const std::string& tag) {
        std::vector<int> codes;
        for (std::size_t i = 0; i < calls.size(); ++i) {
            fs::path out = tmp / (tag + "_" + std::to_string(i) + ".json");
            std::ostringstream cmd;
            cmd << '"' << cli << '"' << " --instance " << (fixtures / calls[i].fixture)
                << " --output " << out << " " << calls[i].args << " 2>/dev/null";
            codes.push_back(std::system(cmd.str().c_str()));
        }
        return codes;
    };
    auto first = run_all("a");
    auto second = run_all("b");
    require(first == second, "exit codes differ across runs");
    for (std::size_t i = 0; i < calls.size(); ++i) {
        auto slurp = [&](const std::string& tag) {
            std::ifstream in(tmp / (tag + "_" + std::to_string(i) + ".json"), std::ios::binary);
            std::ostringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        std::string a = slurp("a"), b = slurp("b");
        require(!a.empty(), "empty output for invocation " + std::to_string(i));
        require(a == b, "outputs differ for invocation " + std::to_string(i));
    }
    fs::remove_all(tmp);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance_suite <cli-binary> <fixtures-dir>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const fs::path fixtures = argv[2];

    run_criterion(1, "incomparable pair with exact regions", criterion1);
    run_criterion(2, "complete instance yields only comparable verdicts", criterion2);
    run_criterion(3, "ES region at zero and es_value cross-check", criterion3);
    run_criterion(4, "primal-dual equality with certificates", criterion4);
    run_criterion(5, "multi-utility agreement across families", criterion5);
    run_criterion(6, "ES dual certificates respect the w/alpha band", criterion6);
    run_criterion(7, "superreplication duality on binomial markets", criterion7);
    run_criterion(8, "systemic conjugate box and support routes", criterion8);
    run_criterion(9, "structural invariants on the fixture corpus",
                  [&] { criterion9(fixtures); });
    run_criterion(10, "byte-identical CLI output across runs",
                  [&] { criterion10(cli, fixtures); });

    return failures == 0 ? 0 : 1;
}
