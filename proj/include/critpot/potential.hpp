#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/special_functions/expint.hpp>

#include "critpot/error.hpp"
#include "critpot/specfun/quadrature.hpp"

namespace critpot {

/// Large-r behaviour of v(r).
enum class TailKind { exponential_like, power_law, gaussian_like, compact_support };

inline const char* to_string(TailKind kind) {
    switch (kind) {
    case TailKind::exponential_like: return "exponential-like";
    case TailKind::power_law: return "power-law";
    case TailKind::gaussian_like: return "gaussian-like";
    case TailKind::compact_support: return "compact-support";
    }
    return "unknown";
}

using RadialFn = std::function<double(double)>;
using Params = std::map<std::string, double>;

/// A short-range attractive potential V(r) = -g v(r) in dimensionless radius.
///
/// Near the origin v(r) ~ g_tilde r^(-q) with q = s + p < 2; the full origin
/// expansion v(r) = r^(-q) sum_k g_k r^k is exposed through `origin_coeffs`
/// (g_0 = g_tilde) and drives the series launch of the radial solvers.
struct PotentialSpec {
    std::string name;
    RadialFn v;
    RadialFn v_prime;
    RadialFn v_second;
    RadialFn log_v_prime;  ///< v'/v, stable where v underflows; may be empty
    double s = 0.0;
    double p = 0.0;
    double q = 0.0;
    double g_tilde = 1.0;
    TailKind tail_kind = TailKind::exponential_like;
    std::optional<double> tail_mu;          ///< only for power-law tails
    std::optional<double> sqrt_v_integral;  ///< closed form of int_0^inf sqrt(v) dr
    Params params;
    std::function<std::vector<double>(int)> origin_coeffs;  ///< g_0 .. g_{K-1}
    RadialFn tail_integral;              ///< int_r^inf v; quadrature when empty
    std::optional<double> support_end;   ///< v == 0 beyond this radius
};

/// (spec, beta, l): defines U(r) = -beta v(r) + l(l+1)/r^2.
struct EffectiveProblem {
    PotentialSpec spec;
    double beta = 0.0;
    int l = 0;
};

inline void validate(const PotentialSpec& spec) {
    if (!spec.v) throw Error(Errc::invalid_argument, "potential '" + spec.name + "' has no v(r)");
    if (!(spec.q < 2.0)) {
        throw Error(Errc::invalid_argument, "potential '" + spec.name + "' violates q = s + p < 2");
    }
    if (!(spec.g_tilde > 0.0)) {
        throw Error(Errc::invalid_argument, "potential '" + spec.name + "' needs g_tilde > 0");
    }
    if (spec.tail_kind == TailKind::power_law && !(spec.tail_mu && *spec.tail_mu > 2.0)) {
        throw Error(Errc::invalid_argument, "power-law tail needs mu > 2");
    }
}

inline void validate(const EffectiveProblem& problem) {
    if (!(problem.beta >= 0.0)) throw Error(Errc::domain, "beta must be nonnegative");
    if (problem.l < 0) throw Error(Errc::domain, "l must be nonnegative");
}

inline double eval_v(const PotentialSpec& spec, double r) {
    if (!(r > 0.0)) throw Error(Errc::domain, "eval_v: r must be positive");
    return spec.v(r);
}

inline double eval_U(const EffectiveProblem& problem, double r) {
    if (!(r > 0.0)) throw Error(Errc::domain, "eval_U: r must be positive");
    const double ll = problem.l * (problem.l + 1.0);
    return -problem.beta * problem.spec.v(r) + ll / (r * r);
}

/// v'/v, preferring the spec's stable form.
inline double log_derivative_v(const PotentialSpec& spec, double r) {
    if (spec.log_v_prime) return spec.log_v_prime(r);
    return spec.v_prime(r) / spec.v(r);
}

/// int_r^inf v(t) dt.
inline double tail_integral(const PotentialSpec& spec, double r) {
    if (spec.tail_integral) return spec.tail_integral(r);
    return specfun::integrate_adaptive([&](double t) { return spec.v(t); }, r,
                                       std::numeric_limits<double>::infinity(), specfun::Endpoints::regular,
                                       1e-12);
}

/// Fills v' and v'' with central differences, h = 1e-6 max(1, r). Lower
/// accuracy than analytic derivatives; intended for ad-hoc potentials only.
inline void use_numeric_derivatives(PotentialSpec& spec) {
    auto v = spec.v;
    spec.v_prime = [v](double r) {
        const double h = std::min(1e-6 * std::max(1.0, r), 0.5 * r);
        return (v(r + h) - v(r - h)) / (2.0 * h);
    };
    spec.v_second = [v](double r) {
        const double h = std::min(1e-4 * std::max(1.0, r), 0.5 * r);
        return (v(r + h) - 2.0 * v(r) + v(r - h)) / (h * h);
    };
    spec.log_v_prime = {};
}

namespace detail {

/// Coefficients of 1 / (sum_k w_k r^k), w_0 != 0.
inline std::vector<double> reciprocal_series(const std::vector<double>& w) {
    std::vector<double> c(w.size(), 0.0);
    c[0] = 1.0 / w[0];
    for (std::size_t m = 1; m < w.size(); ++m) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= m; ++k) acc += w[k] * c[m - k];
        c[m] = -acc / w[0];
    }
    return c;
}

inline double factorial(int k) { return std::tgamma(k + 1.0); }

inline double param_or(const Params& params, const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

inline void reject_unknown(const std::string& name, const Params& params, std::initializer_list<const char*> known) {
    for (const auto& [key, value] : params) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw Error(Errc::invalid_argument, "potential '" + name + "' has no parameter '" + key + "'");
        if (!std::isfinite(value)) throw Error(Errc::invalid_argument, "parameter '" + key + "' is not finite");
    }
}

inline PotentialSpec exponential() {
    PotentialSpec spec;
    spec.name = "exponential";
    spec.v = [](double r) { return std::exp(-r); };
    spec.v_prime = [](double r) { return -std::exp(-r); };
    spec.v_second = [](double r) { return std::exp(-r); };
    spec.log_v_prime = [](double) { return -1.0; };
    spec.s = 0.0;
    spec.p = 0.0;
    spec.q = 0.0;
    spec.sqrt_v_integral = 2.0;
    spec.origin_coeffs = [](int K) {
        std::vector<double> g(K);
        for (int k = 0; k < K; ++k) g[k] = (k % 2 ? -1.0 : 1.0) / factorial(k);
        return g;
    };
    spec.tail_integral = [](double r) { return std::exp(-r); };
    return spec;
}

inline PotentialSpec hulthen() {
    PotentialSpec spec;
    spec.name = "hulthen";
    // 1/(e^r - 1) written through e^-r so that large r cannot overflow.
    spec.v = [](double r) { return std::exp(-r) / -std::expm1(-r); };
    spec.v_prime = [](double r) {
        const double d = -std::expm1(-r);
        return -std::exp(-r) / (d * d);
    };
    spec.v_second = [](double r) {
        const double e = std::exp(-r);
        const double d = -std::expm1(-r);
        return e * (1.0 + e) / (d * d * d);
    };
    spec.log_v_prime = [](double r) { return -1.0 / -std::expm1(-r); };
    spec.s = 0.0;
    spec.p = 1.0;
    spec.q = 1.0;
    spec.sqrt_v_integral = std::numbers::pi;
    spec.origin_coeffs = [](int K) {
        // r/(e^r - 1) = 1 / sum_k r^k/(k+1)!
        std::vector<double> w(K);
        for (int k = 0; k < K; ++k) w[k] = 1.0 / factorial(k + 1);
        return reciprocal_series(w);
    };
    spec.tail_integral = [](double r) { return -std::log1p(-std::exp(-r)); };
    return spec;
}

inline PotentialSpec yukawa() {
    PotentialSpec spec;
    spec.name = "yukawa";
    spec.v = [](double r) { return std::exp(-r) / r; };
    spec.v_prime = [](double r) { return -std::exp(-r) * (1.0 / r + 1.0 / (r * r)); };
    spec.v_second = [](double r) { return std::exp(-r) * (1.0 / r + 2.0 / (r * r) + 2.0 / (r * r * r)); };
    spec.log_v_prime = [](double r) { return -1.0 - 1.0 / r; };
    spec.s = 1.0;
    spec.p = 0.0;
    spec.q = 1.0;
    spec.sqrt_v_integral = std::sqrt(2.0 * std::numbers::pi);
    spec.origin_coeffs = [](int K) {
        std::vector<double> g(K);
        for (int k = 0; k < K; ++k) g[k] = (k % 2 ? -1.0 : 1.0) / factorial(k);
        return g;
    };
    spec.tail_integral = [](double r) { return boost::math::expint(1, r); };
    return spec;
}

inline PotentialSpec gaussian() {
    PotentialSpec spec;
    spec.name = "gaussian";
    spec.v = [](double r) { return std::exp(-r * r); };
    spec.v_prime = [](double r) { return -2.0 * r * std::exp(-r * r); };
    spec.v_second = [](double r) { return (4.0 * r * r - 2.0) * std::exp(-r * r); };
    spec.log_v_prime = [](double r) { return -2.0 * r; };
    spec.tail_kind = TailKind::gaussian_like;
    spec.sqrt_v_integral = std::sqrt(std::numbers::pi / 2.0);
    spec.origin_coeffs = [](int K) {
        std::vector<double> g(K, 0.0);
        for (int j = 0; 2 * j < K; ++j) g[2 * j] = (j % 2 ? -1.0 : 1.0) / factorial(j);
        return g;
    };
    spec.tail_integral = [](double r) { return 0.5 * std::sqrt(std::numbers::pi) * std::erfc(r); };
    return spec;
}

inline PotentialSpec woods_saxon(double x0) {
    if (!(x0 > 0.0)) throw Error(Errc::invalid_argument, "woods-saxon requires x0 > 0");
    PotentialSpec spec;
    spec.name = "woods-saxon";
    spec.params = {{"x0", x0}};
    // With w = x0 e^r: v = 1/(1+w), and 1 - v = 1/(1+1/w) stays finite when w overflows.
    auto parts = [x0](double r) {
        const double w = x0 * std::exp(r);
        return std::pair{1.0 / (1.0 + w), 1.0 / (1.0 + 1.0 / w)};
    };
    spec.v = [parts](double r) { return parts(r).first; };
    spec.v_prime = [parts](double r) {
        auto [v, u] = parts(r);
        return -v * u;
    };
    spec.v_second = [parts](double r) {
        auto [v, u] = parts(r);
        return v * u * (u - v);
    };
    spec.log_v_prime = [parts](double r) { return -parts(r).second; };
    spec.sqrt_v_integral = 2.0 * std::log((1.0 + std::sqrt(x0 + 1.0)) / std::sqrt(x0));
    spec.origin_coeffs = [x0](int K) {
        std::vector<double> w(K);
        for (int k = 0; k < K; ++k) w[k] = x0 / factorial(k);
        w[0] += 1.0;
        return reciprocal_series(w);
    };
    spec.tail_integral = [x0](double r) { return std::log1p(std::exp(-r) / x0); };
    return spec;
}

inline PotentialSpec cutoff(double s) {
    if (!(s < 2.0)) throw Error(Errc::invalid_argument, "cutoff requires s < 2");
    PotentialSpec spec;
    spec.name = "cutoff";
    spec.params = {{"s", s}};
    spec.v = [s](double r) { return r <= 1.0 ? std::pow(r, -s) : 0.0; };
    spec.v_prime = [s](double r) { return r <= 1.0 ? -s * std::pow(r, -s - 1.0) : 0.0; };
    spec.v_second = [s](double r) { return r <= 1.0 ? s * (s + 1.0) * std::pow(r, -s - 2.0) : 0.0; };
    spec.log_v_prime = [s](double r) { return r <= 1.0 ? -s / r : 0.0; };
    spec.s = s;
    spec.p = 0.0;
    spec.q = s;
    spec.tail_kind = TailKind::compact_support;
    spec.support_end = 1.0;
    spec.sqrt_v_integral = 2.0 / (2.0 - s);
    spec.origin_coeffs = [](int K) {
        std::vector<double> g(K, 0.0);
        g[0] = 1.0;
        return g;
    };
    spec.tail_integral = [s](double r) {
        if (r >= 1.0) return 0.0;
        if (s == 1.0) return -std::log(r);
        return (1.0 - std::pow(r, 1.0 - s)) / (1.0 - s);
    };
    return spec;
}

}  // namespace detail

/// Names accepted by builtin().
inline const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"exponential", "hulthen", "yukawa", "gaussian", "woods-saxon", "cutoff"};
    return names;
}

/// Built-in potential by name. Parameters: woods-saxon {x0 > 0, default 1};
/// cutoff {s < 2, default 0}; the others take none.
inline PotentialSpec builtin(const std::string& name, const Params& params = {}) {
    PotentialSpec spec;
    if (name == "exponential") {
        detail::reject_unknown(name, params, {});
        spec = detail::exponential();
    } else if (name == "hulthen") {
        detail::reject_unknown(name, params, {});
        spec = detail::hulthen();
    } else if (name == "yukawa") {
        detail::reject_unknown(name, params, {});
        spec = detail::yukawa();
    } else if (name == "gaussian") {
        detail::reject_unknown(name, params, {});
        spec = detail::gaussian();
    } else if (name == "woods-saxon") {
        detail::reject_unknown(name, params, {"x0"});
        spec = detail::woods_saxon(detail::param_or(params, "x0", 1.0));
    } else if (name == "cutoff") {
        detail::reject_unknown(name, params, {"s"});
        spec = detail::cutoff(detail::param_or(params, "s", 0.0));
    } else {
        throw Error(Errc::invalid_argument, "unknown potential '" + name + "'");
    }
    validate(spec);
    return spec;
}

}  // namespace critpot
