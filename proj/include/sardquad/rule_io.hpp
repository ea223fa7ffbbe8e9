#pragma once

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>

#include "errors.hpp"
#include "solver.hpp"

namespace sardquad {

/// File schema for a rule:
///   {"m": int, "N": int, "h": real, "nodes": [real], "coeffs": [real],
///    "method": string, "norm": real|null}
/// Reals are serialized by shortest round-trip decimal, so
/// parse(serialize(rule)) is bit-exact for doubles.
inline nlohmann::ordered_json rule_to_json(const quadrature_rule<double>& rule,
                                           std::optional<double> norm = std::nullopt) {
    nlohmann::ordered_json j;
    j["m"] = rule.m;
    j["N"] = rule.N;
    j["h"] = rule.h;
    j["nodes"] = rule.nodes;
    j["coeffs"] = rule.coeffs;
    j["method"] = to_string(rule.method);
    if (norm)
        j["norm"] = *norm;
    else
        j["norm"] = nullptr;
    return j;
}

inline rule_method method_from_string(const std::string& s) {
    if (s == "closed_form_m1") return rule_method::closed_form_m1;
    if (s == "closed_form_m2") return rule_method::closed_form_m2;
    if (s == "theorem_4_6") return rule_method::theorem_4_6;
    if (s == "oracle") return rule_method::oracle;
    throw invalid_argument_error("method_from_string: unknown method '" + s + "'");
}

struct parsed_rule {
    quadrature_rule<double> rule;
    std::optional<double> norm;
};

inline parsed_rule rule_from_json(const nlohmann::json& j) {
    parsed_rule out;
    try {
        out.rule.m = j.at("m").get<int>();
        out.rule.N = j.at("N").get<int>();
        out.rule.h = j.at("h").get<double>();
        out.rule.nodes = j.at("nodes").get<std::vector<double>>();
        out.rule.coeffs = j.at("coeffs").get<std::vector<double>>();
        out.rule.method = method_from_string(j.at("method").get<std::string>());
        if (!j.at("norm").is_null()) out.norm = j.at("norm").get<double>();
    } catch (const nlohmann::json::exception& ex) {
        throw invalid_argument_error(std::string("rule_from_json: malformed rule file: ") + ex.what());
    }
    if (out.rule.nodes.size() != out.rule.coeffs.size() ||
        out.rule.nodes.size() != static_cast<std::size_t>(out.rule.N) + 1)
        throw invalid_argument_error("rule_from_json: node/coefficient lengths do not match N + 1");
    return out;
}

/// CSV form: header then one "beta,node,coeff" row per node, 17 significant
/// digits.
inline void rule_to_csv(std::ostream& os, const quadrature_rule<double>& rule) {
    os << "beta,node,coeff\n";
    char buf[64];
    for (int b = 0; b <= rule.N; ++b) {
        os << b << ',';
        std::snprintf(buf, sizeof buf, "%.17g", rule.nodes[b]);
        os << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", rule.coeffs[b]);
        os << buf << '\n';
    }
}

}  // namespace sardquad
