#include "svrisk/instance.hpp"

#include <fstream>
#include <utility>

namespace svrisk {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw InstanceError(msg); }

const json& need(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) fail(std::string("missing key: ") + key);
    return *it;
}

Index index_from(const json& j, const char* what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) fail(std::string(what) + ": nonnegative integer expected");
    return static_cast<Index>(j.get<long long>());
}

RVec rvec_from(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) fail(std::string(what) + ": nonempty array expected");
    RVec v(static_cast<Index>(j.size()));
    Index i = 0;
    for (const auto& e : j) v(i++) = rational_from_json(e);
    return v;
}

std::vector<Index> mask_from(const json& j, Index d) {
    if (!j.is_array() || j.empty()) fail("M_mask: nonempty array expected");
    std::vector<Index> mask;
    for (const auto& e : j) mask.push_back(index_from(e, "M_mask entry"));
    for (std::size_t t = 0; t < mask.size(); ++t) {
        if (mask[t] >= d) fail("M_mask: coordinate out of range");
        if (t > 0 && mask[t] <= mask[t - 1]) fail("M_mask: strictly increasing coordinates required");
    }
    return mask;
}

EventTree tree_from(const json& j) {
    const auto& arr = need(j, "nodes");
    if (!arr.is_array() || arr.empty()) fail("tree.nodes: nonempty array expected");
    std::vector<EventTree::Node> nodes;
    for (const auto& e : arr) {
        EventTree::Node node;
        const auto& p = need(e, "parent");
        if (!p.is_number_integer()) fail("tree node parent: integer expected");
        node.parent = p.get<int>();
        node.cond_prob = rational_from_json(need(e, "prob"));
        nodes.push_back(std::move(node));
    }
    return EventTree(std::move(nodes));
}

SolvencyCone cone_from(const json& j, Index d) {
    if (j.contains("generators")) {
        std::vector<RVec> gens;
        for (const auto& g : j["generators"]) gens.push_back(rvec_from(g, "cone generator"));
        return SolvencyCone::from_generators(d, std::move(gens));
    }
    if (j.contains("rows")) {
        std::vector<LinearRow> rows;
        for (const auto& r : j["rows"]) {
            LinearRow row;
            row.coeffs = rvec_from(need(r, "coeffs"), "cone row coeffs");
            std::string rel = need(r, "rel").get<std::string>();
            if (rel == ">=")
                row.rel = Relation::GreaterEq;
            else if (rel == "<=")
                row.rel = Relation::LessEq;
            else if (rel == "=")
                row.rel = Relation::Equal;
            else
                fail("cone row rel: one of >= <= =");
            row.rhs = r.contains("rhs") ? rational_from_json(r["rhs"]) : Rational(0);
            rows.push_back(std::move(row));
        }
        return SolvencyCone::from_rows(d, std::move(rows));
    }
    fail("cone: generators or rows required");
}

Aggregator aggregator_from(const json& j) {
    std::string kind = need(j, "kind").get<std::string>();
    if (kind == "weighted_losses") {
        std::vector<Rational> alpha;
        for (const auto& a : need(j, "alpha")) alpha.push_back(rational_from_json(a));
        return Aggregator::weighted_losses(alpha);
    }
    if (kind == "custom") {
        std::vector<std::vector<AffinePiece>> pieces;
        for (const auto& coord : need(j, "pieces")) {
            std::vector<AffinePiece> ps;
            for (const auto& p : coord)
                ps.push_back({rational_from_json(need(p, "slope")),
                              rational_from_json(need(p, "intercept"))});
            pieces.push_back(std::move(ps));
        }
        return Aggregator::custom(std::move(pieces));
    }
    fail("aggregator kind: weighted_losses or custom");
}

json vec_strings(const RVec& v) {
    json arr = json::array();
    for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i).str());
    return arr;
}

}  // namespace

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const std::exception& e) {
            fail(std::string("bad rational: ") + e.what());
        }
    }
    fail("rational: integer or \"p/q\" string expected");
}

namespace {
Instance parse_instance_impl(const json& doc);
}  // namespace

Instance parse_instance(const json& doc) {
    try {
        return parse_instance_impl(doc);
    } catch (const InstanceError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
}

namespace {

Instance parse_instance_impl(const json& doc) {
    if (!doc.is_object()) fail("instance: object expected");
    const Index d = index_from(need(doc, "d"), "d");
    if (d < 1) fail("d: must be >= 1");

    std::optional<EventTree> tree;
    std::optional<ScenarioSpace> space;
    std::optional<TerminalSpace> terminal;
    if (doc.contains("tree")) {
        tree = tree_from(doc["tree"]);
        terminal = tree_to_terminal_space(*tree);
        space = terminal->space;
    } else if (doc.contains("space")) {
        space = ScenarioSpace(rvec_from(need(doc["space"], "probs"), "space.probs"));
    } else {
        fail("instance: space or tree required");
    }

    const auto& acc = need(doc, "acceptance");
    std::string kind = need(acc, "kind").get<std::string>();
    std::optional<AcceptanceSet> A;
    std::optional<MarketModel> market;
    std::optional<Aggregator> aggregator;
    try {
        if (kind == "worst_case") {
            if (acc.contains("coords")) {
                std::vector<Index> coords;
                for (const auto& c : acc["coords"]) coords.push_back(index_from(c, "coords entry"));
                A = worst_case(*space, d, coords);
            } else {
                A = worst_case(*space, d);
            }
        } else if (kind == "expectation") {
            if (d != 1) fail("expectation acceptance requires d = 1");
            A = expectation_set(*space);
        } else if (kind == "expected_shortfall") {
            std::vector<Rational> alpha;
            for (const auto& a : need(acc, "alpha")) alpha.push_back(rational_from_json(a));
            A = expected_shortfall_set(*space, d, alpha);
        } else if (kind == "systemic") {
            aggregator = aggregator_from(need(acc, "aggregator"));
            if (aggregator->dim() != d) fail("systemic aggregator dimension mismatch");
            A = preimage_acceptance(*aggregator, *space);
        } else if (kind == "market") {
            if (!tree) fail("market acceptance requires a tree");
            std::vector<SolvencyCone> cones;
            for (const auto& c : need(acc, "cones")) cones.push_back(cone_from(c, d));
            AcceptanceSet base = acc.contains("base") && need(acc["base"], "kind") == "expectation"
                                     ? expectation_set(*space)
                                     : worst_case(*space, d);
            market = MarketModel(*tree, d, std::move(cones), std::move(base));
            A = augmented_acceptance(*market);
        } else {
            fail("acceptance kind: worst_case | expectation | expected_shortfall | systemic | market");
        }
    } catch (const InstanceError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        fail(std::string("acceptance: ") + e.what());
    }

    Instance inst{*space,          std::move(tree), d, std::move(*A), std::move(market),
                  std::move(aggregator), {},        {}, {}};
    inst.mask = doc.contains("M_mask") ? mask_from(doc["M_mask"], d) : full_mask(d);

    if (doc.contains("vectors")) {
        for (const auto& [name, rows] : doc["vectors"].items()) {
            if (!rows.is_array() || static_cast<Index>(rows.size()) != inst.space.size())
                fail("vector " + name + ": one row per scenario required");
            RMat vals(inst.space.size(), d);
            Index s = 0;
            for (const auto& row : rows) {
                RVec r = rvec_from(row, "vector row");
                if (r.size() != d) fail("vector " + name + ": row width must be d");
                vals.row(s++) = r.transpose();
            }
            inst.vectors.emplace(name, RandomVector(inst.space, std::move(vals)));
        }
    }
    if (doc.contains("directions")) {
        for (const auto& [name, arr] : doc["directions"].items()) {
            try {
                inst.directions.emplace(name, Direction(rvec_from(arr, "direction")));
            } catch (const std::invalid_argument& e) {
                fail("direction " + name + ": " + e.what());
            }
        }
    }
    return inst;
}

}  // namespace

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open instance file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const std::exception& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    return parse_instance(doc);
}

json to_json(const Rational& r) { return r.str(); }

json to_json(const ExtReal& v) {
    if (v.is_pos_inf()) return "inf";
    if (v.is_neg_inf()) return "-inf";
    return v.value().str();
}

json to_json(const RVec& v) { return vec_strings(v); }

json to_json(const RMat& m) {
    json rows = json::array();
    for (Index s = 0; s < m.rows(); ++s) rows.push_back(vec_strings(RVec(m.row(s).transpose())));
    return rows;
}

json to_json(const RiskRegion& region) {
    json j;
    j["coords"] = region.coords;
    j["empty"] = region.empty;
    json facets = json::array();
    for (const auto& f : region.facets)
        facets.push_back({{"normal", vec_strings(f.normal)}, {"offset", f.offset.str()}});
    j["facets"] = std::move(facets);
    return j;
}

namespace {

json certificate_json(const SeparationCertificate& c) {
    return {{"witness", vec_strings(c.m)},
            {"direction", vec_strings(c.w.w)},
            {"rho_failing_side", to_json(c.rho_first)},
            {"rho_other_side", to_json(c.rho_second)}};
}

}  // namespace

json to_json(const PreferenceVerdict& verdict) {
    json j;
    switch (verdict.relation) {
        case PrefRelation::FirstAtLeast: j["relation"] = "X_preferred"; break;
        case PrefRelation::SecondAtLeast: j["relation"] = "Y_preferred"; break;
        case PrefRelation::Equivalent: j["relation"] = "equivalent"; break;
        case PrefRelation::Incomparable: j["relation"] = "incomparable"; break;
    }
    if (verdict.first_fails) j["X_fails"] = certificate_json(*verdict.first_fails);
    if (verdict.second_fails) j["Y_fails"] = certificate_json(*verdict.second_fails);
    return j;
}

json to_json(const DualElement& cert) {
    return {{"Z", to_json(cert.Z.values)},
            {"direction", vec_strings(cert.w.w)},
            {"sigma", cert.sigma.str()}};
}

json to_json(const PricingSystem& ps) {
    json nodes = json::array();
    for (const auto& y : ps.node_values) nodes.push_back(vec_strings(y));
    return {{"Z", to_json(ps.Z.values)}, {"nodes", std::move(nodes)}};
}

json to_json(const FinitenessReport& rep) {
    return {{"sum_is_whole_space", rep.sum_is_whole_space},
            {"mask_meets_qint_cone", rep.mask_meets_qint_cone},
            {"mask_meets_qint_recession", rep.mask_meets_qint_recession},
            {"finite_guaranteed", rep.finite_guaranteed}};
}

}  // namespace svrisk
