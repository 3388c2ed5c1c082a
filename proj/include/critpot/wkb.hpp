#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "critpot/asymptotics.hpp"
#include "critpot/critical.hpp"
#include "critpot/potential.hpp"
#include "critpot/shooting.hpp"
#include "critpot/specfun/quadrature.hpp"
#include "critpot/specfun/roots.hpp"

namespace critpot {

/// Second-order WKB data at fixed (beta, l).
struct WkbTerms {
    double r1 = 0.0;
    double r2 = 0.0;
    double S0 = 0.0;
    double S2 = 0.0;
    double a1 = 0.0;  ///< U'(r1)
    double b1 = 0.0;  ///< U''(r1) / 2
    double a2 = 0.0;
    double b2 = 0.0;
    double n_effective = 0.0;  ///< (S0 + S2)/pi + 1/2

    double action() const { return S0 + S2; }
};

namespace detail {

inline void require_wkb_spec(const PotentialSpec& spec, const char* who) {
    if (spec.support_end) {
        throw Error(Errc::unsupported, std::string(who) + ": not applicable to compact-support potentials");
    }
}

inline double U_second(const EffectiveProblem& pr, double r) {
    const double ll = pr.l * (pr.l + 1.0);
    return -pr.beta * pr.spec.v_second(r) + 6.0 * ll / (r * r * r * r);
}

}  // namespace detail

/// Roots of l(l+1)/r^2 = beta v(r) on either side of r_m.
inline std::pair<double, double> turning_points(const EffectiveProblem& problem) {
    validate(problem);
    detail::require_wkb_spec(problem.spec, "turning_points");
    if (problem.l < 1) throw Error(Errc::domain, "turning_points: l must be at least 1");
    const auto& spec = problem.spec;
    const double ll = problem.l * (problem.l + 1.0);
    const double rm = solve_r_m(spec);
    auto h = [&](double r) { return problem.beta * r * r * spec.v(r) - ll; };
    const double hm = h(rm);
    if (std::abs(hm) <= 1e-13 * ll) return {rm, rm};
    if (hm < 0.0) throw Error(Errc::no_well, "turning_points: beta is below the classical threshold");

    double lo = 0.5 * rm;
    while (h(lo) >= 0.0) {
        lo *= 0.5;
        if (lo < 1e-300) throw Error(Errc::non_convergence, "turning_points: inner root not bracketed");
    }
    double hi = 2.0 * rm;
    while (h(hi) >= 0.0) {
        hi *= 2.0;
        if (hi > 1e6) throw Error(Errc::non_convergence, "turning_points: outer root not bracketed");
    }
    const double r1 = specfun::bisect(h, {lo, rm, 1e-14}).root;
    const double r2 = specfun::bisect(h, {rm, hi, 1e-14}).root;
    return {r1, r2};
}

/// int_{r1}^{r2} sqrt(-U) dr.
inline double action_S0(const EffectiveProblem& problem, std::pair<double, double> tp) {
    const auto [r1, r2] = tp;
    if (r2 <= r1) return 0.0;
    auto f = [&](double r) { return std::sqrt(std::max(0.0, -eval_U(problem, r))); };
    // Rounding in -U near the turning points is amplified by the square root,
    // so the acceptance test carries an absolute floor.
    double err = 0.0;
    const double S0 = specfun::integrate_adaptive(f, r1, r2, specfun::Endpoints::singular_both, 1e-12, &err);
    if (err > 1e-10 * S0 + 1e-12) throw Error(Errc::non_convergence, "action_S0: quadrature did not converge");
    return S0;
}

inline double action_S0(const EffectiveProblem& problem) { return action_S0(problem, turning_points(problem)); }

/// Expansion coefficients U(r_i + d) = a_i d + b_i d^2 + ...
inline std::array<double, 2> turning_point_coefficients(const EffectiveProblem& problem, double r) {
    const auto& spec = problem.spec;
    const double v = spec.v(r);
    const double a = -problem.beta * (2.0 * v / r + spec.v_prime(r));
    const double b = 0.5 * problem.beta * (6.0 * v / (r * r) - spec.v_second(r));
    return {a, b};
}

namespace detail {

/// Second-order action with the endpoint divergences removed analytically,
/// integrated over [r1 + mu, r2 - mu]. `err` receives the quadrature error.
inline double S2_at_mu(const EffectiveProblem& pr, double r1, double r2, const std::array<double, 2>& c1,
                       const std::array<double, 2>& c2, double mu, double* err = nullptr) {
    const double k1 = c1[1] * std::pow(std::abs(c1[0]), -1.5);
    const double k2 = c2[1] * std::pow(std::abs(c2[0]), -1.5);
    const double L = r2 - r1;
    auto g = [&](double r) {
        const double mU = -eval_U(pr, r);
        const double I = U_second(pr, r) / (mU * std::sqrt(mU));
        const double d1 = r - r1;
        const double d2 = r2 - r;
        return I - 2.0 * k1 / (d1 * std::sqrt(d1)) - 2.0 * k2 / (d2 * std::sqrt(d2));
    };
    // Near the turning points -U is a difference of O(l^2/r^2) terms, which
    // puts a floor under the attainable accuracy; 1e-10 sits above it.
    double e = 0.0;
    const double inner =
        specfun::integrate_adaptive(g, r1 + mu, r2 - mu, specfun::Endpoints::singular_both, 1e-10, &e);
    if (err) *err = e / 48.0;
    return (inner - 4.0 * (k1 + k2) / std::sqrt(L - mu)) / 48.0;
}

}  // namespace detail

/// Controls for the mu -> 0 limit of the second-order action.
struct S2Options {
    double mu0 = 0.5;  ///< largest mu as a fraction of the local scale min(L/2, |a_i/b_i|)
    int levels = 5;    ///< mu_k = mu0 scale 4^{-k}, k < levels; Richardson in sqrt(mu)
};

/// Second-order correction as the mu -> 0 limit. The remainder after the
/// counterterm is a series in sqrt(mu) with odd powers 1, 3, 5, ..., removed
/// by Richardson extrapolation.
inline double action_S2(const EffectiveProblem& problem, std::pair<double, double> tp, S2Options opt = {}) {
    const auto [r1, r2] = tp;
    if (r2 - r1 < 1e-6) throw Error(Errc::degenerate_well, "action_S2: turning points have merged");
    if (opt.levels < 1 || opt.levels > 8 || !(opt.mu0 > 0.0 && opt.mu0 <= 1.0)) {
        throw Error(Errc::invalid_argument, "action_S2: need 1 <= levels <= 8 and 0 < mu0 <= 1");
    }
    const auto c1 = turning_point_coefficients(problem, r1);
    const auto c2 = turning_point_coefficients(problem, r2);
    const double L = r2 - r1;
    double scale = 0.5 * L;
    if (c1[1] != 0.0) scale = std::min(scale, std::abs(c1[0] / c1[1]));
    if (c2[1] != 0.0) scale = std::min(scale, std::abs(c2[0] / c2[1]));
    std::vector<double> T(static_cast<std::size_t>(opt.levels));
    for (int k = 0; k < opt.levels; ++k) {
        T[k] = detail::S2_at_mu(problem, r1, r2, c1, c2, opt.mu0 * scale * std::pow(0.25, k));
    }
    // sqrt(mu) halves per level.
    for (int j = 0; j + 1 < opt.levels; ++j) {
        const double f = std::ldexp(1.0, 2 * j + 1);
        for (int k = opt.levels - 1; k > j; --k) T[k] = (f * T[k] - T[k - 1]) / (f - 1.0);
    }
    return T.back();
}

inline double action_S2(const EffectiveProblem& problem) { return action_S2(problem, turning_points(problem)); }

inline WkbTerms wkb_terms(const EffectiveProblem& problem) {
    WkbTerms t;
    const auto tp = turning_points(problem);
    t.r1 = tp.first;
    t.r2 = tp.second;
    const auto c1 = turning_point_coefficients(problem, t.r1);
    const auto c2 = turning_point_coefficients(problem, t.r2);
    t.a1 = c1[0];
    t.b1 = c1[1];
    t.a2 = c2[0];
    t.b2 = c2[1];
    t.S0 = action_S0(problem, tp);
    t.S2 = action_S2(problem, tp);
    t.n_effective = t.action() / std::numbers::pi + 0.5;
    return t;
}

/// Root in beta of S0 + S2 = (n - 1/2) pi, scanning upward from the
/// classical threshold.
inline CriticalResult wkb2_beta(const PotentialSpec& spec, int n, int l, double tol = SolverDefaults::tol) {
    if (n < 1) throw Error(Errc::domain, "wkb2_beta: n must be positive");
    if (l < 1) throw Error(Errc::unsupported, "wkb2_beta: second-order WKB is not applicable to l = 0");
    detail::require_wkb_spec(spec, "wkb2_beta");
    const double level = (n - 0.5) * std::numbers::pi;
    auto f = [&](double beta) { return action_S2({spec, beta, l}) + action_S0({spec, beta, l}) - level; };

    const double th = classical_threshold(spec, l);
    const double step = 0.5 * detail::beta_scan_step(spec, n, l);
    const double limit = th + detail::beta_scan_limit(spec, n, l);
    double lo = th * (1.0 + 1e-3);
    if (f(lo) >= 0.0) throw Error(Errc::bracket_not_found, "wkb2_beta: quantization already met at the threshold");
    double hi = lo;
    while (true) {
        hi = lo + step;
        if (hi > limit) throw Error(Errc::bracket_not_found, "wkb2_beta: no root below the scan limit");
        if (f(hi) > 0.0) break;
        lo = hi;
    }
    const auto root = specfun::bisect(f, {lo, hi, tol});

    const WkbTerms t = wkb_terms({spec, root.root, l});
    CriticalResult out;
    out.n = n;
    out.l = l;
    out.beta = root.root;
    out.method = Method::wkb2;
    out.error_estimate = root.half_width();
    out.diagnostics = {{"S0", t.S0}, {"S2", t.S2}, {"r1", t.r1}, {"r2", t.r2}};
    return out;
}

/// Centrifugal-free first-order quantization, in closed form.
inline CriticalResult wkb1_beta(const PotentialSpec& spec, int n, int l) {
    if (n < 1) throw Error(Errc::domain, "wkb1_beta: n must be positive");
    if (l < 0) throw Error(Errc::domain, "wkb1_beta: l must be nonnegative");
    detail::require_wkb_spec(spec, "wkb1_beta");
    const double I = sqrt_v_integral(spec);
    const double g = gamma_lq(l, spec.q);
    const double x = std::numbers::pi * (n + g) / I;
    CriticalResult out;
    out.n = n;
    out.l = l;
    out.beta = x * x;
    out.method = Method::wkb1;
    out.diagnostics = {{"gamma", g}, {"sqrt_v_integral", I}};
    return out;
}

}  // namespace critpot
