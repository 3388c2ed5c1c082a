#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "critpot/error.hpp"
#include "critpot/potential.hpp"

namespace critpot::io {

/// A built-in potential named with its parameters.
struct PotentialRequest {
    std::string name;
    Params params;

    PotentialSpec build() const { return builtin(name, params); }
};

/// Parses {"name": "...", "params": {"key": number, ...}}. Any other field,
/// or a non-numeric parameter, is rejected.
inline PotentialRequest parse_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw Error(Errc::invalid_argument, "config: top level must be an object");
    PotentialRequest req;
    for (const auto& [key, value] : doc.items()) {
        if (key == "name") {
            if (!value.is_string()) throw Error(Errc::invalid_argument, "config: \"name\" must be a string");
            req.name = value.get<std::string>();
        } else if (key == "params") {
            if (!value.is_object()) throw Error(Errc::invalid_argument, "config: \"params\" must be an object");
            for (const auto& [pk, pv] : value.items()) {
                if (!pv.is_number()) {
                    throw Error(Errc::invalid_argument, "config: parameter '" + pk + "' must be a number");
                }
                req.params[pk] = pv.get<double>();
            }
        } else {
            throw Error(Errc::invalid_argument, "config: unknown field '" + key + "'");
        }
    }
    if (req.name.empty()) throw Error(Errc::invalid_argument, "config: missing \"name\"");
    return req;
}

inline PotentialRequest parse_config_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(Errc::invalid_argument, std::string("config: ") + e.what());
    }
    return parse_config(doc);
}

inline PotentialRequest load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::invalid_argument, "config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

/// "key=value" with a numeric value.
inline std::pair<std::string, double> parse_param(const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw Error(Errc::invalid_argument, "parameter '" + kv + "' is not of the form key=value");
    }
    const std::string key = kv.substr(0, eq);
    const std::string text = kv.substr(eq + 1);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw Error(Errc::invalid_argument, "parameter '" + key + "' needs a numeric value");
    }
    return {key, value};
}

}  // namespace critpot::io
