#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>

#include "critpot/critical.hpp"
#include "critpot/potential.hpp"
#include "critpot/specfun/bessel.hpp"
#include "critpot/specfun/ode.hpp"
#include "critpot/specfun/roots.hpp"

namespace critpot {

/// Bessel order of the cutoff problem, (2l - 1 + s)/(2 - s).
inline double cutoff_order(int l, double s) { return (2.0 * l - 1.0 + s) / (2.0 - s); }

/// beta_{n,l} for v = r^{-s} on (0, 1], zero beyond.
inline double cutoff_beta(int n, int l, double s) {
    if (!(s < 2.0)) throw Error(Errc::domain, "cutoff_beta: s must be below 2");
    if (n < 1 || l < 0) throw Error(Errc::domain, "cutoff_beta: need n >= 1 and l >= 0");
    const double z = 0.5 * (2.0 - s) * specfun::bessel_zero(cutoff_order(l, s), n);
    return z * z;
}

/// Large-n law ((2 - s)/2)^2 pi^2 n^2.
inline double cutoff_asymptotic_n(int n, double s) {
    const double a = 0.5 * (2.0 - s) * std::numbers::pi * n;
    return a * a;
}

/// Large-l form (l - (1-s)/2)^2 [1 + sum_k alpha_{k,1} nu^{-2k/3}]^2 for the
/// first zero, nu the Bessel order. `terms` = 0 gives the leading l^2 law
/// shifted by (1-s)/2.
inline double cutoff_asymptotic_l(int l, double s, int terms = 5) {
    static constexpr std::array<double, 5> alpha1{1.8557571, 1.033150, -0.00397, -0.0908, 0.043};
    if (terms < 0 || terms > static_cast<int>(alpha1.size())) {
        throw Error(Errc::invalid_argument, "cutoff_asymptotic_l: terms must lie in [0, 5]");
    }
    const double nu = cutoff_order(l, s);
    double bracket = 1.0;
    for (int k = 1; k <= terms; ++k) bracket += alpha1[k - 1] * std::pow(nu, -2.0 * k / 3.0);
    const double lead = l - 0.5 * (1.0 - s);
    return lead * lead * bracket * bracket;
}

/// j_{0,n}^2 / 4.
inline double exponential_beta(int n) {
    if (n < 1) throw Error(Errc::domain, "exponential_beta: n must be positive");
    const double j = specfun::bessel_zero(0.0, n);
    return 0.25 * j * j;
}

inline double exponential_asymptotic_n(int n) {
    const double a = 0.5 * std::numbers::pi * (n - 0.25);
    return a * a;
}

inline double hulthen_beta(int n) {
    if (n < 1) throw Error(Errc::domain, "hulthen_beta: n must be positive");
    return static_cast<double>(n) * n;
}

/// t = 2 ln((1 + sqrt(x0 + 1)) / sqrt(x0)).
inline double ws_t(double x0) { return 2.0 * std::log((1.0 + std::sqrt(x0 + 1.0)) / std::sqrt(x0)); }

/// Real function whose zeros in alpha are the l = 0 critical values
/// alpha = sqrt(beta) of the Woods-Saxon well. Integrates
/// phi'' = -alpha^2 / (1 + x0 e^r) phi from r = 0 with phi = 0, phi' = 1 and
/// returns the constant slope phi' reached once the well is negligible.
inline double ws_condition(double alpha, double x0) {
    if (!(alpha > 0.0)) throw Error(Errc::domain, "ws_condition: alpha must be positive");
    if (!(x0 > 0.0)) throw Error(Errc::domain, "ws_condition: x0 must be positive");
    const double a2 = alpha * alpha;
    // alpha^2 int_R^inf v < 1e-16, and past the flat core.
    const double R = std::max(std::log(a2 / x0) + 16.0 * std::numbers::ln10, -std::log(x0) + 20.0);

    specfun::OdeProblem<2> ode;
    ode.rhs = [a2, x0](double r, const specfun::State<2>& y, specfun::State<2>& dy) {
        const double w = x0 * std::exp(r);
        dy[0] = y[1];
        dy[1] = -a2 / (1.0 + w) * y[0];
    };
    ode.t0 = 0.0;
    ode.t1 = R;
    ode.y0 = {0.0, 1.0};
    ode.tol = 1e-13;
    ode.renorm_threshold = SolverDefaults::renorm_threshold;
    return specfun::solve_ode<2>(ode).y_end[1];
}

/// Zero-order estimate of the n-th critical value, (j_{0,n} / t)^2.
inline double ws_seed(int n, double x0) {
    const double a = specfun::bessel_zero(0.0, n) / ws_t(x0);
    return a * a;
}

/// n-th zero of ws_condition, as beta = alpha^2.
inline double ws_beta(int n, double x0) {
    if (n < 1) throw Error(Errc::domain, "ws_beta: n must be positive");
    if (!(x0 > 0.0)) throw Error(Errc::domain, "ws_beta: x0 must be positive");
    const double t = ws_t(x0);
    const double step = std::numbers::pi / (8.0 * t);
    auto G = [x0](double a) { return ws_condition(a, x0); };
    double lo = step;
    double g_lo = G(lo);
    int found = 0;
    // Zeros of G interlace roughly like those of J_0(alpha t), spaced ~ pi/t.
    const double alpha_max = 4.0 * std::sqrt(ws_seed(n, x0)) + 10.0 * step;
    while (lo < alpha_max) {
        const double hi = lo + step;
        const double g_hi = G(hi);
        if (std::signbit(g_lo) != std::signbit(g_hi) && ++found == n) {
            const double a = specfun::bisect(G, {lo, hi, 1e-15}).root;
            return a * a;
        }
        lo = hi;
        g_lo = g_hi;
    }
    throw Error(Errc::bracket_not_found, "ws_beta: zero not found");
}

/// Large-n law pi^2 / (4 ln^2(...)) (n - 1/4)^2.
inline double ws_asymptotic_n(int n, double x0) {
    const double a = 2.0 * std::numbers::pi * (n - 0.25) / ws_t(x0);
    return 0.25 * a * a;
}

/// Whether a closed-form (or reduced one-dimensional) solution exists.
inline bool analytic_available(const PotentialSpec& spec, int l) {
    if (spec.name == "cutoff") return true;
    if (l != 0) return false;
    return spec.name == "exponential" || spec.name == "hulthen" || spec.name == "woods-saxon";
}

inline CriticalResult analytic_beta(const PotentialSpec& spec, int n, int l) {
    if (n < 1 || l < 0) throw Error(Errc::domain, "analytic_beta: need n >= 1 and l >= 0");
    if (!analytic_available(spec, l)) {
        throw Error(Errc::unsupported, "analytic_beta: no closed form for " + spec.name + " at l = " + std::to_string(l));
    }
    CriticalResult out;
    out.n = n;
    out.l = l;
    out.method = Method::analytic;
    if (spec.name == "cutoff") {
        const double s = spec.params.at("s");
        out.beta = cutoff_beta(n, l, s);
        out.diagnostics = {{"bessel_order", cutoff_order(l, s)}};
    } else if (spec.name == "exponential") {
        out.beta = exponential_beta(n);
    } else if (spec.name == "hulthen") {
        out.beta = hulthen_beta(n);
    } else {
        const double x0 = spec.params.at("x0");
        out.beta = ws_beta(n, x0);
        out.diagnostics = {{"seed", ws_seed(n, x0)}};
    }
    return out;
}

}  // namespace critpot
