#pragma once

#include "svrisk/markets.hpp"
#include "svrisk/preference.hpp"
#include "svrisk/systemic.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace svrisk {

/// Schema or value error in an instance document.
struct InstanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A fully validated instance document: the (terminal) scenario space, the
/// acceptance set (already market-augmented when a market is given), the
/// active-coordinate mask and the named inputs.
struct Instance {
    ScenarioSpace space;
    std::optional<EventTree> tree;
    Index d = 1;
    AcceptanceSet acceptance;
    std::optional<MarketModel> market;
    std::optional<Aggregator> aggregator;  // systemic instances only
    std::vector<Index> mask;
    std::map<std::string, RandomVector> vectors;
    std::map<std::string, Direction> directions;
};

Instance parse_instance(const nlohmann::json& doc);
Instance load_instance(const std::string& path);

/// JSON encoders; rationals always as canonical "p/q" strings.
nlohmann::json to_json(const Rational& r);
nlohmann::json to_json(const ExtReal& v);
nlohmann::json to_json(const RVec& v);
nlohmann::json to_json(const RMat& m);
nlohmann::json to_json(const RiskRegion& region);
nlohmann::json to_json(const PreferenceVerdict& verdict);
nlohmann::json to_json(const DualElement& cert);
nlohmann::json to_json(const PricingSystem& ps);
nlohmann::json to_json(const FinitenessReport& rep);

Rational rational_from_json(const nlohmann::json& j);

}  // namespace svrisk
