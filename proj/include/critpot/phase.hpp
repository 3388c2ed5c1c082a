#pragma once

#include <cmath>
#include <numbers>

#include "critpot/asymptotics.hpp"
#include "critpot/critical.hpp"
#include "critpot/origin_series.hpp"
#include "critpot/potential.hpp"
#include "critpot/shooting.hpp"
#include "critpot/specfun/ode.hpp"
#include "critpot/specfun/roots.hpp"

namespace critpot {

/// Stabilizing function K(r) in y = K cot(eta).
enum class Stabilizer {
    sqrt_U0,  ///< sqrt(beta v) for l = 0, sqrt(l(l+1))/r for l > 0
    unity     ///< K = 1
};

inline const char* to_string(Stabilizer s) { return s == Stabilizer::unity ? "unity" : "sqrt_U0"; }

/// atan(sqrt(l/(l+1))), the zero-coupling value of eta(infinity).
inline double delta_l(int l) {
    if (l < 0) throw Error(Errc::domain, "delta_l: l must be nonnegative");
    return std::atan(std::sqrt(l / (l + 1.0)));
}

/// Zero-energy logarithmic derivative chi'/chi of the decaying l = 0
/// solution at radius r beyond the tail radius.
inline double tail_log_derivative(const PotentialSpec& spec, double beta, double r) {
    if (!(r > 0.0)) throw Error(Errc::domain, "tail_log_derivative: r must be positive");
    if (spec.support_end && r >= *spec.support_end) return 0.0;
    if (spec.tail_kind == TailKind::power_law && spec.tail_mu) {
        const double mu = *spec.tail_mu;
        return beta * std::pow(r, 1.0 - mu) / (mu - 1.0);
    }
    if (spec.name == "exponential" || spec.name == "hulthen") return beta * std::exp(-r);
    if (spec.name == "yukawa") return beta * std::exp(-r) / r;
    if (spec.name == "gaussian") return 0.5 * beta * std::exp(-r * r) / r;
    if (spec.name == "woods-saxon") return beta * std::exp(-r) / spec.params.at("x0");
    return beta * tail_integral(spec, r);
}

/// Phase function at the matching radius.
struct PhaseState {
    int l = 0;
    Stabilizer stabilizer = Stabilizer::sqrt_U0;
    double eta_end = 0.0;
    double R_end = 0.0;
    double base_level = 0.0;  ///< arccot(y_crit/K) at R_end, in (0, pi)

    /// Level whose crossing by eta_end marks beta_{n,l}; equals
    /// delta_l - pi/2 + n pi in the R -> infinity limit.
    double target(int n) const { return base_level - std::numbers::pi + n * std::numbers::pi; }

    /// Number of levels strictly below eta_end.
    int crossings() const {
        const double k = std::floor((eta_end - target(1)) / std::numbers::pi) + 1.0;
        return k > 0.0 ? static_cast<int>(k) : 0;
    }
};

/// Stabilizer used when none is forced: sqrt_U0 unless l = 0 and beta v
/// vanishes somewhere on the integration range.
inline Stabilizer default_stabilizer(const EffectiveProblem& problem) {
    if (problem.l == 0 && problem.spec.support_end) return Stabilizer::unity;
    return Stabilizer::sqrt_U0;
}

namespace detail {

inline double stabilizer_K(const EffectiveProblem& problem, Stabilizer stab, double r) {
    if (stab == Stabilizer::unity) return 1.0;
    if (problem.l > 0) return std::sqrt(problem.l * (problem.l + 1.0)) / r;
    return std::sqrt(problem.beta * problem.spec.v(r));
}

}  // namespace detail

/// Integrates the phase equation from the origin-series launch radius to
/// the matching radius. eta is continuous (never reduced mod pi).
inline PhaseState eta_infinity(const EffectiveProblem& problem, double tol = 1e-12,
                               std::optional<Stabilizer> forced = std::nullopt) {
    validate(problem);
    if (!(tol >= 1e-14 && tol <= 1e-6)) throw Error(Errc::invalid_argument, "eta_infinity: tol must lie in [1e-14, 1e-6]");
    const Stabilizer stab = forced.value_or(default_stabilizer(problem));
    if (stab == Stabilizer::sqrt_U0 && problem.l == 0 && problem.spec.support_end) {
        throw Error(Errc::unsupported, "eta_infinity: sqrt(beta v) stabilizer has a node for compact support");
    }

    const auto& spec = problem.spec;
    const double beta = problem.beta;
    const int l = problem.l;
    const double c = std::sqrt(l * (l + 1.0));
    const double ll = l * (l + 1.0);

    PhaseState out;
    out.l = l;
    out.stabilizer = stab;
    out.R_end = matching_radius(problem);

    const OriginSeries series = build_series(problem, SolverDefaults::series_order);
    const double r0 = series.r_start;
    const double y0 = series_log_derivative(series, r0);
    const double eta0 = std::atan2(detail::stabilizer_K(problem, stab, r0), y0);

    specfun::OdeProblem<1> ode;
    if (stab == Stabilizer::unity) {
        ode.rhs = [&](double r, const specfun::State<1>& y, specfun::State<1>& dy) {
            const double s = std::sin(y[0]);
            const double co = std::cos(y[0]);
            const double U = -beta * spec.v(r) + ll / (r * r);
            dy[0] = co * co - U * s * s;
        };
    } else if (l > 0) {
        ode.rhs = [&](double r, const specfun::State<1>& y, specfun::State<1>& dy) {
            const double s = std::sin(y[0]);
            dy[0] = (c * std::cos(2.0 * y[0]) - 0.5 * std::sin(2.0 * y[0])) / r + r * beta * spec.v(r) / c * s * s;
        };
    } else {
        ode.rhs = [&](double r, const specfun::State<1>& y, specfun::State<1>& dy) {
            dy[0] = 0.25 * log_derivative_v(spec, r) * std::sin(2.0 * y[0]) + std::sqrt(beta * spec.v(r));
        };
    }
    ode.t0 = r0;
    ode.t1 = out.R_end;
    ode.y0 = {eta0};
    ode.tol = tol;
    ode.breakpoints = detail::breakpoints(spec);
    out.eta_end = specfun::solve_ode<1>(ode).y_end[0];

    const double R = out.R_end;
    const double y_crit = l > 0 ? -l / R : tail_log_derivative(spec, beta, R);
    const double K_end = detail::stabilizer_K(problem, stab, R);
    // At beta = 0 (l = 0) both vanish; the ratio y_crit/K tends to zero.
    out.base_level = (K_end == 0.0 && y_crit == 0.0) ? 0.5 * std::numbers::pi : std::atan2(K_end, y_crit);
    return out;
}

/// Number of bound states from the phase staircase.
inline int count_bound_states_phase(const PotentialSpec& spec, double beta, int l, double tol = 1e-12,
                                    std::optional<Stabilizer> forced = std::nullopt) {
    if (!(beta >= 0.0)) throw Error(Errc::domain, "count_bound_states_phase: beta must be nonnegative");
    if (beta == 0.0) return 0;
    return eta_infinity({spec, beta, l}, tol, forced).crossings();
}

/// beta_{n,l} from the crossing of eta(R_end) with its n-th level.
inline CriticalResult critical_beta_phase(const PotentialSpec& spec, int n, int l, double tol = SolverDefaults::tol,
                                          std::optional<Stabilizer> forced = std::nullopt) {
    if (n < 1) throw Error(Errc::domain, "critical_beta_phase: n must be positive");
    if (l < 0) throw Error(Errc::domain, "critical_beta_phase: l must be nonnegative");
    const double ode_tol = SolverDefaults::ode_tol(tol);
    std::size_t evaluations = 0;
    auto count = [&](double beta) {
        ++evaluations;
        return eta_infinity({spec, beta, l}, ode_tol, forced).crossings();
    };
    auto [lo, hi] = detail::bracket_by_count(spec, n, l, count);
    auto g = [&](double beta) {
        ++evaluations;
        const PhaseState st = eta_infinity({spec, beta, l}, ode_tol, forced);
        return st.eta_end - st.target(n);
    };
    const auto root = specfun::bisect(g, {lo, hi, tol});

    const PhaseState at_root = eta_infinity({spec, root.root, l}, ode_tol, forced);
    CriticalResult out;
    out.n = n;
    out.l = l;
    out.beta = root.root;
    out.method = Method::phase;
    out.error_estimate = root.half_width();
    out.diagnostics = {{"R_end", at_root.R_end},
                       {"eta_end", at_root.eta_end},
                       {"target", at_root.target(n)},
                       {"evaluations", static_cast<double>(evaluations)},
                       {"bisection_steps", static_cast<double>(root.iterations)},
                       {"unity_stabilizer", at_root.stabilizer == Stabilizer::unity ? 1.0 : 0.0},
                       {"ode_tol", ode_tol}};
    return out;
}

}  // namespace critpot
