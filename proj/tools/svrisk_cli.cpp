#include "svrisk/instance.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;
using namespace svrisk;

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kMathAnomaly = 3;
constexpr int kInconsistency = 4;

void emit(const std::string& output, const json& j) {
    std::string text = j.dump(2) + "\n";
    if (output.empty() || output == "-") {
        std::cout << text;
    } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw InstanceError("cannot open output file: " + output);
        out << text;
    }
}

const RandomVector& named_vector(const Instance& inst, const std::string& name) {
    auto it = inst.vectors.find(name);
    if (it == inst.vectors.end()) throw InstanceError("unknown vector: " + name);
    return it->second;
}

const Direction& named_direction(const Instance& inst, const std::string& name) {
    auto it = inst.directions.find(name);
    if (it == inst.directions.end()) throw InstanceError("unknown direction: " + name);
    return it->second;
}

std::vector<Index> parse_mask_flag(const std::string& flag, Index d) {
    std::vector<Index> mask;
    std::stringstream ss(flag);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            mask.push_back(static_cast<Index>(std::stol(tok)));
        } catch (const std::exception&) {
            throw InstanceError("bad --mask entry: " + tok);
        }
    }
    if (mask.empty()) throw InstanceError("--mask: empty");
    for (std::size_t t = 0; t < mask.size(); ++t) {
        if (mask[t] < 0 || mask[t] >= d) throw InstanceError("--mask: coordinate out of range");
        if (t > 0 && mask[t] <= mask[t - 1]) throw InstanceError("--mask: strictly increasing required");
    }
    return mask;
}

int cmd_region(const Instance& inst, const std::vector<Index>& mask, const std::string& vec,
               const std::string& output) {
    auto region = risk_region(inst.acceptance, named_vector(inst, vec), mask);
    emit(output, to_json(region));
    return kOk;
}

int cmd_compare(const Instance& inst, const std::vector<Index>& mask, const std::string& xname,
                const std::string& yname, const std::string& output) {
    const auto& X = named_vector(inst, xname);
    const auto& Y = named_vector(inst, yname);
    auto verdict = compare(inst.acceptance, X, Y, mask);
    auto record = multi_utility_check(inst.acceptance, X, Y, mask);
    json j = to_json(verdict);
    j["scalar_agrees"] = record.agree;
    emit(output, j);
    return record.agree ? kOk : kInconsistency;
}

int cmd_scalar(const Instance& inst, const std::vector<Index>& mask, const std::string& xname,
               const std::string& wname, bool dual, const std::string& output) {
    const auto& X = named_vector(inst, xname);
    const auto& w = named_direction(inst, wname);
    json j;
    ExtReal value;
    if (dual) {
        auto rd = rho_dual(inst.acceptance, X, w, mask);
        value = rd.value;
        j["value"] = to_json(rd.value);
        if (rd.cert) j["certificate"] = to_json(*rd.cert);
    } else {
        value = rho(inst.acceptance, X, w, mask);
        j["value"] = to_json(value);
    }
    emit(output, j);
    return value.is_finite() ? kOk : kMathAnomaly;
}

int cmd_cps(const Instance& inst, const std::string& wname, const std::string& output) {
    if (!inst.market) throw InstanceError("cps requires a market instance");
    auto ps = find_pricing_system(*inst.market, named_direction(inst, wname));
    if (!ps) {
        emit(output, json{{"system", "none"}});
        return kMathAnomaly;
    }
    emit(output, json{{"system", to_json(*ps)}});
    return kOk;
}

int cmd_conjugate(const Instance& inst, const std::string& zspec, const std::string& output) {
    if (!inst.aggregator) throw InstanceError("conjugate requires a systemic instance");
    std::vector<Rational> entries;
    std::stringstream ss(zspec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            entries.push_back(Rational::parse(tok));
        } catch (const std::exception& e) {
            throw InstanceError(std::string("bad conjugate argument: ") + e.what());
        }
    }
    RVec z(static_cast<Index>(entries.size()));
    for (Index i = 0; i < z.size(); ++i) z(i) = entries[static_cast<std::size_t>(i)];
    if (z.size() != inst.aggregator->dim()) throw InstanceError("conjugate: dimension mismatch");
    auto value = conjugate(*inst.aggregator, z);
    emit(output, json{{"value", to_json(value)}});
    return value.is_finite() ? kOk : kMathAnomaly;
}

int cmd_diag(const Instance& inst, const std::vector<Index>& mask, const std::string& output) {
    emit(output, to_json(finiteness_report(inst.acceptance, mask)));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact polyhedral engine for set-valued risk measures"};
    app.require_subcommand(1);

    std::string instance_path;
    std::string output;
    std::string mask_flag;
    app.add_option("--instance", instance_path, "instance JSON file")->required();
    app.add_option("--output", output, "output file (default stdout)");
    app.add_option("--mask", mask_flag, "override the active coordinates, e.g. 0,1");

    std::string xname, yname, wname, zspec, vecname;
    bool dual = false;

    auto* region = app.add_subcommand("region", "risk region of a named vector");
    region->add_option("vector", vecname, "vector name")->required();

    auto* cmp = app.add_subcommand("compare", "preference verdict for two named vectors");
    cmp->add_option("X", xname, "first vector")->required();
    cmp->add_option("Y", yname, "second vector")->required();

    auto* scalar = app.add_subcommand("scalar", "scalarized risk of a named vector");
    scalar->add_option("vector", xname, "vector name")->required();
    scalar->add_option("direction", wname, "direction name")->required();
    scalar->add_flag("--dual", dual, "dual form with certificate");

    auto* cps = app.add_subcommand("cps", "consistent pricing system for a direction");
    cps->add_option("direction", wname, "direction name")->required();

    auto* conj = app.add_subcommand("conjugate", "aggregator conjugate at a point");
    conj->add_option("z", zspec, "comma-separated rationals")->required();

    auto* diag = app.add_subcommand("diag", "finiteness diagnostics");

    CLI11_PARSE(app, argc, argv);

    try {
        Instance inst = load_instance(instance_path);
        std::vector<Index> mask =
            mask_flag.empty() ? inst.mask : parse_mask_flag(mask_flag, inst.d);
        if (region->parsed()) return cmd_region(inst, mask, vecname, output);
        if (cmp->parsed()) return cmd_compare(inst, mask, xname, yname, output);
        if (scalar->parsed()) return cmd_scalar(inst, mask, xname, wname, dual, output);
        if (cps->parsed()) return cmd_cps(inst, wname, output);
        if (conj->parsed()) return cmd_conjugate(inst, zspec, output);
        if (diag->parsed()) return cmd_diag(inst, mask, output);
        std::cerr << nlohmann::json{{"error", "no subcommand"}}.dump() << "\n";
        return kInputError;
    } catch (const InstanceError& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        return kInputError;
    } catch (const std::logic_error& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        return kInconsistency;
    }
}
