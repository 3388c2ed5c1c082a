#pragma once

#include <cstdio>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "critpot/io/config.hpp"
#include "critpot/solve.hpp"

namespace critpot::io {

using nlohmann::json;

/// Eight significant digits, the precision of the reference tables.
inline std::string sig8(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.8g", x);
    return buf;
}

/// Full round-trip precision.
inline std::string full(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline json params_json(const Params& params) {
    json p = json::object();
    for (const auto& [k, v] : params) p[k] = v;
    return p;
}

inline json result_json(const PotentialRequest& pot, const CriticalResult& r) {
    json d = json::object();
    for (const auto& [k, v] : r.diagnostics) d[k] = v;
    return {{"potential", pot.name}, {"params", params_json(pot.params)}, {"n", r.n},           {"l", r.l},
            {"method", to_string(r.method)}, {"beta", r.beta}, {"tol_achieved", r.error_estimate}, {"diagnostics", d}};
}

inline json error_json(Errc code, const std::string& message) {
    return {{"error", {{"code", to_string(code)}, {"message", message}}}};
}

inline std::string critical_csv(const PotentialRequest& pot, const CriticalResult& r) {
    std::ostringstream os;
    os << "potential,n,l,method,beta,tol_achieved\n";
    os << pot.name << ',' << r.n << ',' << r.l << ',' << to_string(r.method) << ',' << sig8(r.beta) << ','
       << sig8(r.error_estimate) << '\n';
    return os.str();
}

namespace detail {

inline std::optional<double> try_diff(const BetaGrid& g, int n, int l, bool delta) {
    try {
        return delta ? delta_nl(g, n, l) : lambda_nl(g, n, l);
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace detail

/// One row per cell: potential,n,l,method,beta,tol_achieved[,Delta,Lambda].
/// Failed cells carry "error:<code>" in the beta column.
inline std::string table_csv(const PotentialRequest& pot, const Table& t, bool diffs) {
    const BetaGrid g = t.grid();
    std::ostringstream os;
    os << "potential,n,l,method,beta,tol_achieved";
    if (diffs) os << ",Delta,Lambda";
    os << '\n';
    for (int n = 1; n <= t.n_max; ++n) {
        for (int l = 0; l <= t.l_max; ++l) {
            const Outcome& c = t.at(n, l);
            os << pot.name << ',' << n << ',' << l << ',';
            if (c.ok()) {
                os << to_string(c.result->method) << ',' << sig8(c.result->beta) << ',' << sig8(c.result->error_estimate);
            } else {
                os << ",error:" << to_string(c.error_code) << ',';
            }
            if (diffs) {
                const auto d = detail::try_diff(g, n, l, true);
                const auto L = detail::try_diff(g, n, l, false);
                os << ',' << (d ? sig8(*d) : "") << ',' << (L ? sig8(*L) : "");
            }
            os << '\n';
        }
    }
    return os.str();
}

inline json table_json(const PotentialRequest& pot, const Table& t, bool diffs) {
    const BetaGrid g = t.grid();
    json cells = json::array();
    for (int n = 1; n <= t.n_max; ++n) {
        for (int l = 0; l <= t.l_max; ++l) {
            const Outcome& c = t.at(n, l);
            json cell;
            if (c.ok()) {
                cell = result_json(pot, *c.result);
            } else {
                cell = {{"potential", pot.name}, {"params", params_json(pot.params)}, {"n", n}, {"l", l},
                        {"method", nullptr}, {"beta", nullptr}, {"tol_achieved", nullptr},
                        {"diagnostics", json::object()}, {"error", {{"code", to_string(c.error_code)}, {"message", c.error_message}}}};
            }
            if (diffs) {
                const auto d = detail::try_diff(g, n, l, true);
                const auto L = detail::try_diff(g, n, l, false);
                cell["Delta"] = d ? json(*d) : json(nullptr);
                cell["Lambda"] = L ? json(*L) : json(nullptr);
            }
            cells.push_back(std::move(cell));
        }
    }
    return {{"potential", pot.name}, {"params", params_json(pot.params)}, {"n_max", t.n_max}, {"l_max", t.l_max},
            {"cells", cells}};
}

inline std::string compare_csv(const PotentialRequest& pot, int n, int l, const Comparison& c) {
    std::ostringstream os;
    os << "potential,n,l,method,beta,tol_achieved,error\n";
    for (const auto& [m, o] : c.runs) {
        os << pot.name << ',' << n << ',' << l << ',' << to_string(m) << ',';
        if (o.ok()) os << full(o.result->beta) << ',' << sig8(o.result->error_estimate) << ",\n";
        else os << ",," << to_string(o.error_code) << '\n';
    }
    os << "method_a,method_b,relative_difference\n";
    for (std::size_t i = 0; i < c.runs.size(); ++i) {
        for (std::size_t j = i + 1; j < c.runs.size(); ++j) {
            const auto d = c.relative_difference(c.runs[i].first, c.runs[j].first);
            os << to_string(c.runs[i].first) << ',' << to_string(c.runs[j].first) << ',' << (d ? sig8(*d) : "") << '\n';
        }
    }
    return os.str();
}

inline json compare_json(const PotentialRequest& pot, int n, int l, const Comparison& c) {
    json runs = json::array();
    for (const auto& [m, o] : c.runs) {
        if (o.ok()) {
            runs.push_back(result_json(pot, *o.result));
        } else {
            runs.push_back({{"method", to_string(m)}, {"error", {{"code", to_string(o.error_code)}, {"message", o.error_message}}}});
        }
    }
    json diffs = json::array();
    for (std::size_t i = 0; i < c.runs.size(); ++i) {
        for (std::size_t j = i + 1; j < c.runs.size(); ++j) {
            const auto d = c.relative_difference(c.runs[i].first, c.runs[j].first);
            diffs.push_back({{"a", to_string(c.runs[i].first)}, {"b", to_string(c.runs[j].first)},
                             {"relative_difference", d ? json(*d) : json(nullptr)}});
        }
    }
    return {{"potential", pot.name}, {"params", params_json(pot.params)}, {"n", n}, {"l", l}, {"runs", runs},
            {"pairs", diffs}};
}

inline std::string curve_csv(const std::vector<CurvePoint>& pts) {
    std::ostringstream os;
    os << "beta,F,eta_end,R_end,bound_states\n";
    for (const auto& p : pts) {
        os << full(p.beta) << ',' << full(p.F) << ',' << full(p.eta_end) << ',' << sig8(p.R_end) << ','
           << p.bound_states << '\n';
    }
    return os.str();
}

inline json asym_json(const PotentialRequest& pot, const AsymptoticProfile& a) {
    json j = {{"potential", pot.name}, {"params", params_json(pot.params)}, {"r_m", a.r_m}, {"d_l", a.d_l},
              {"sqrt_v_integral", a.sqrt_v_integral}, {"a_l", a.a_l()}};
    j["d_n"] = a.d_n ? json(*a.d_n) : json(nullptr);
    j["a_n"] = a.d_n ? json(*a.a_n()) : json(nullptr);
    return j;
}

inline std::string asym_csv(const PotentialRequest& pot, const AsymptoticProfile& a) {
    std::ostringstream os;
    os << "potential,r_m,d_l,d_n,sqrt_v_integral,a_l,a_n\n";
    os << pot.name << ',' << sig8(a.r_m) << ',' << sig8(a.d_l) << ',' << (a.d_n ? sig8(*a.d_n) : "") << ','
       << sig8(a.sqrt_v_integral) << ',' << sig8(a.a_l()) << ',' << (a.d_n ? sig8(*a.a_n()) : "") << '\n';
    return os.str();
}

}  // namespace critpot::io
