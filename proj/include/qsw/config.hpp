#pragma once

// Sweep configuration parsing: a flat JSON document with a nested epsilon
// grid object. Unknown keys are rejected by name; an empty document yields
// the full defaults. Schema (all keys optional):
//
//   {
//     "epsilon":  {"min": 0.0, "max": 1.0, "steps": 201},
//     "collisions": [0, 1, 2, 3, 5, 10, 20, 50],
//     "betas": [0.1, 5.0],            // "inf" accepted as an entry
//     "g_tau": 0.2,
//     "omega": 1.0,
//     "omega_s": 1.0,
//     "postselections": ["plus", "minus"],
//     "include_definite_baseline": true,
//     "engine": "analytic"            // analytic | bruteforce | both
//   }

#include <cctype>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qsw/errors.hpp"
#include "qsw/experiments.hpp"

namespace qsw {

inline ControlOutcome parse_outcome(const std::string& s) {
    if (s == "plus") return ControlOutcome::plus;
    if (s == "minus") return ControlOutcome::minus;
    throw ConfigError("postselections: unknown outcome '" + s + "' (expected plus or minus)");
}

inline Engine parse_engine(const std::string& s) {
    if (s == "analytic") return Engine::analytic;
    if (s == "bruteforce") return Engine::bruteforce;
    if (s == "both") return Engine::both;
    throw ConfigError("engine: unknown engine '" + s +
                      "' (expected analytic, bruteforce or both)");
}

namespace detail {

using json = nlohmann::json;

inline double number_or_inf(const json& v, const std::string& field) {
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        throw ConfigError(field + ": only the string \"inf\" is accepted, got \"" +
                          v.get<std::string>() + "\"");
    }
    if (!v.is_number())
        throw ConfigError(field + ": expected a number or \"inf\"");
    return v.get<double>();
}

inline void reject_unknown_keys(const json& obj, const std::vector<std::string>& known,
                                const std::string& scope) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const auto& k : known)
            if (item.key() == k) { ok = true; break; }
        if (!ok)
            throw ConfigError("unknown config key '" + scope + item.key() + "'");
    }
}

inline ScenarioConfig config_from_json(const json& doc) {
    if (!doc.is_object())
        throw ConfigError("config: top-level document must be a JSON object");
    reject_unknown_keys(doc,
                        {"epsilon", "collisions", "betas", "g_tau", "omega", "omega_s",
                         "postselections", "include_definite_baseline", "engine"},
                        "");
    ScenarioConfig cfg;
    if (doc.contains("epsilon")) {
        const json& e = doc.at("epsilon");
        if (!e.is_object())
            throw ConfigError("epsilon: expected an object {min, max, steps}");
        reject_unknown_keys(e, {"min", "max", "steps"}, "epsilon.");
        if (e.contains("min")) cfg.epsilon.min = e.at("min").get<double>();
        if (e.contains("max")) cfg.epsilon.max = e.at("max").get<double>();
        if (e.contains("steps")) {
            if (!e.at("steps").is_number_integer())
                throw ConfigError("epsilon.steps: expected an integer");
            cfg.epsilon.steps = e.at("steps").get<int>();
        }
    }
    if (doc.contains("collisions")) {
        const json& c = doc.at("collisions");
        if (!c.is_array())
            throw ConfigError("collisions: expected an array of integers");
        cfg.collision_counts.clear();
        for (const auto& v : c) {
            if (!v.is_number_integer())
                throw ConfigError("collisions: entries must be integers");
            cfg.collision_counts.push_back(v.get<int>());
        }
    }
    if (doc.contains("betas")) {
        const json& b = doc.at("betas");
        if (!b.is_array())
            throw ConfigError("betas: expected an array of numbers (or \"inf\")");
        cfg.betas.clear();
        for (const auto& v : b)
            cfg.betas.push_back(number_or_inf(v, "betas"));
    }
    if (doc.contains("g_tau")) cfg.g_tau = doc.at("g_tau").get<double>();
    if (doc.contains("omega")) cfg.omega = doc.at("omega").get<double>();
    if (doc.contains("omega_s")) cfg.omega_s = doc.at("omega_s").get<double>();
    if (doc.contains("postselections")) {
        const json& p = doc.at("postselections");
        if (!p.is_array())
            throw ConfigError("postselections: expected an array of outcome names");
        cfg.postselections.clear();
        for (const auto& v : p) {
            if (!v.is_string())
                throw ConfigError("postselections: entries must be strings");
            cfg.postselections.push_back(parse_outcome(v.get<std::string>()));
        }
    }
    if (doc.contains("include_definite_baseline")) {
        if (!doc.at("include_definite_baseline").is_boolean())
            throw ConfigError("include_definite_baseline: expected a boolean");
        cfg.include_definite_baseline = doc.at("include_definite_baseline").get<bool>();
    }
    if (doc.contains("engine")) {
        if (!doc.at("engine").is_string())
            throw ConfigError("engine: expected a string");
        cfg.engine = parse_engine(doc.at("engine").get<std::string>());
    }
    cfg.validate();
    return cfg;
}

// Sets a dotted-path key in the document; the value text is parsed as JSON
// where possible, otherwise taken as a plain string (so beta lists may spell
// "inf" without quoting).
inline void apply_override(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override '" + assignment + "': expected key=value");
    const std::string path = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);

    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::parse_error&) {
        parsed = value; // bare words such as inf, plus, analytic
    }

    json* node = &doc;
    std::size_t start = 0;
    while (true) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot - start);
        if (key.empty())
            throw ConfigError("override '" + assignment + "': empty key component");
        if (dot == std::string::npos) {
            (*node)[key] = parsed;
            return;
        }
        node = &(*node)[key];
        start = dot + 1;
    }
}

} // namespace detail

inline bool blank_document(std::string_view text) {
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

// Parses a config document and applies key=value overrides on top, then
// validates. Empty input means all defaults.
inline ScenarioConfig parse_config(std::string_view text,
                                   const std::vector<std::string>& overrides = {}) {
    detail::json doc = detail::json::object();
    if (!blank_document(text)) {
        try {
            doc = detail::json::parse(text);
        } catch (const detail::json::parse_error& e) {
            throw ConfigError(std::string("config parse error: ") + e.what());
        }
    }
    for (const auto& o : overrides)
        detail::apply_override(doc, o);
    return detail::config_from_json(doc);
}

} // namespace qsw
