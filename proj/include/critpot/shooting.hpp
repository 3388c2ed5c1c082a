#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "critpot/asymptotics.hpp"
#include "critpot/critical.hpp"
#include "critpot/origin_series.hpp"
#include "critpot/potential.hpp"
#include "critpot/specfun/ode.hpp"
#include "critpot/specfun/roots.hpp"

namespace critpot {

/// Outward integration of chi'' = U chi up to the matching radius.
struct ShotResult {
    double chi_end = 0.0;        ///< renormalized; true value is chi_end * exp(rescale_log)
    double chi_prime_end = 0.0;
    double F_value = 0.0;        ///< l chi/R + chi' at R_end; sign-exact under rescaling
    double R_end = 0.0;
    double rescale_log = 0.0;
    int node_count = 0;          ///< sign changes of chi in (0, R_end)
};

/// True once the potential beyond R is negligible: beta v R^2 / max(l(l+1), 1)
/// below eps for l > 0, beta int_R^inf v below eps for l = 0.
inline bool tail_negligible(const EffectiveProblem& problem, double R, double eps = SolverDefaults::tail_eps) {
    const auto& spec = problem.spec;
    if (spec.support_end && R > *spec.support_end) return true;
    if (problem.l > 0) {
        const double ll = problem.l * (problem.l + 1.0);
        return problem.beta * spec.v(R) * R * R / std::max(ll, 1.0) < eps;
    }
    return problem.beta * tail_integral(spec, R) < eps;
}

/// Doubling search for R_end starting at R_initial.
inline double matching_radius(const EffectiveProblem& problem, double R_initial = SolverDefaults::R_initial,
                              double R_max = SolverDefaults::R_max) {
    for (double R = R_initial; R <= R_max; R *= 2.0) {
        if (tail_negligible(problem, R)) return R;
    }
    std::ostringstream msg;
    msg << "matching radius exceeds R_max = " << R_max << " for " << problem.spec.name << " (beta = " << problem.beta
        << ", l = " << problem.l << ")";
    throw Error(Errc::non_convergence, msg.str());
}

namespace detail {

inline std::vector<double> breakpoints(const PotentialSpec& spec) {
    if (spec.support_end) return {*spec.support_end};
    return {};
}

}  // namespace detail

/// Integrates from the origin-series launch point to R_end, counting nodes.
/// `tol` is the local ODE error tolerance, in [1e-14, 1e-6].
inline ShotResult shoot(const EffectiveProblem& problem, double tol = 1e-12) {
    validate(problem);
    if (!(tol >= 1e-14 && tol <= 1e-6)) throw Error(Errc::invalid_argument, "shoot: tol must lie in [1e-14, 1e-6]");

    const OriginSeries series = build_series(problem, SolverDefaults::series_order);
    const double r0 = series.r_start;
    const ChiSlope start = eval_chi_and_slope(series, r0);
    const double scale = std::max(std::abs(start.chi), std::abs(start.chi_prime));

    ShotResult out;
    out.R_end = matching_radius(problem);

    const double beta = problem.beta;
    const double ll = problem.l * (problem.l + 1.0);
    const PotentialSpec& spec = problem.spec;

    specfun::OdeProblem<2> ode;
    ode.rhs = [&](double r, const specfun::State<2>& y, specfun::State<2>& dy) {
        dy[0] = y[1];
        dy[1] = (-beta * spec.v(r) + ll / (r * r)) * y[0];
    };
    ode.t0 = r0;
    ode.t1 = out.R_end;
    ode.y0 = {start.chi / scale, start.chi_prime / scale};
    ode.tol = tol;
    ode.renorm_threshold = SolverDefaults::renorm_threshold;
    ode.breakpoints = detail::breakpoints(spec);

    int nodes = 0;
    auto count_nodes = [&nodes](double, const specfun::State<2>& a, double, const specfun::State<2>& b) {
        if (a[0] != 0.0 && b[0] != 0.0 && std::signbit(a[0]) != std::signbit(b[0])) ++nodes;
    };
    const auto sol = specfun::solve_ode<2>(ode, count_nodes);

    out.chi_end = sol.y_end[0];
    out.chi_prime_end = sol.y_end[1];
    out.rescale_log = std::log(scale) + sol.log_scale;
    out.F_value = problem.l * out.chi_end / out.R_end + out.chi_prime_end;
    out.node_count = nodes;
    return out;
}

/// Number of zero-energy bound states implied by a shot: interior nodes plus
/// the node that lies beyond R_end whenever chi is heading back through zero.
inline int bound_states_from_shot(const ShotResult& shot) {
    return shot.node_count + ((shot.F_value * shot.chi_end < 0.0) ? 1 : 0);
}

/// Number n of bound states: beta_{n,l} < beta <= beta_{n+1,l}.
inline int count_bound_states(const PotentialSpec& spec, double beta, int l, double tol = 1e-12) {
    if (!(beta >= 0.0)) throw Error(Errc::domain, "count_bound_states: beta must be nonnegative");
    if (l < 0) throw Error(Errc::domain, "count_bound_states: l must be nonnegative");
    if (beta == 0.0) return 0;
    if (l > 0 && beta <= classical_threshold(spec, l)) return 0;
    return bound_states_from_shot(shoot({spec, beta, l}, tol));
}

namespace detail {

/// Scan increment for bracketing beta_{n,l}: (d_n/2) max(1, 2(n + gamma)).
inline double beta_scan_step(const PotentialSpec& spec, int n, int l) {
    const double dn = d_n_any(spec);
    return 0.5 * dn * std::max(1.0, 2.0 * (n + gamma_lq(l, spec.q)));
}

inline double beta_scan_limit(const PotentialSpec& spec, int n, int l) {
    const double a = n + gamma_lq(l, spec.q) + 2.0;
    return 4.0 * 0.5 * d_n_any(spec) * a * a;
}

inline double beta_scan_start(const PotentialSpec& spec, int l) {
    return l > 0 ? classical_threshold(spec, l) : 0.0;
}

/// Bracket [lo, hi] with count(lo) < n <= count(hi), narrowed until the
/// count at lo is exactly n - 1 and at hi exactly n.
template <class Count>
std::pair<double, double> bracket_by_count(const PotentialSpec& spec, int n, int l, Count&& count) {
    const double step = beta_scan_step(spec, n, l);
    const double limit = beta_scan_limit(spec, n, l);
    double lo = beta_scan_start(spec, l);
    int c_lo = 0;
    double hi = lo;
    int c_hi = 0;
    while (true) {
        hi = lo + step;
        if (hi > limit) {
            std::ostringstream msg;
            msg << "bracket not found for n = " << n << ", l = " << l << " below beta_max = " << limit;
            throw Error(Errc::bracket_not_found, msg.str());
        }
        c_hi = count(hi);
        if (c_hi >= n) break;
        lo = hi;
        c_lo = c_hi;
    }
    // Narrow until exactly one critical value is enclosed.
    while ((c_hi != n || c_lo != n - 1) && hi - lo > 1e-15 * hi) {
        const double mid = 0.5 * (lo + hi);
        const int c_mid = count(mid);
        if (c_mid >= n) {
            hi = mid;
            c_hi = c_mid;
        } else {
            lo = mid;
            c_lo = c_mid;
        }
    }
    return {lo, hi};
}

}  // namespace detail

/// n-th zero of beta -> F_l(beta): scan with the asymptotic level spacing,
/// then bisection on the sign of F to relative width `tol`.
inline CriticalResult critical_beta_shoot(const PotentialSpec& spec, int n, int l,
                                          double tol = SolverDefaults::tol) {
    if (n < 1) throw Error(Errc::domain, "critical_beta_shoot: n must be positive");
    if (l < 0) throw Error(Errc::domain, "critical_beta_shoot: l must be nonnegative");
    const double ode_tol = SolverDefaults::ode_tol(tol);
    std::size_t evaluations = 0;
    auto count = [&](double beta) {
        ++evaluations;
        return bound_states_from_shot(shoot({spec, beta, l}, ode_tol));
    };
    auto [lo, hi] = detail::bracket_by_count(spec, n, l, count);

    auto F = [&](double beta) {
        ++evaluations;
        return shoot({spec, beta, l}, ode_tol).F_value;
    };
    const auto root = specfun::bisect(F, {lo, hi, tol});

    CriticalResult out;
    out.n = n;
    out.l = l;
    out.beta = root.root;
    out.method = Method::shoot;
    out.error_estimate = root.half_width();
    const ShotResult at_root = shoot({spec, root.root, l}, ode_tol);
    out.diagnostics = {{"R_end", at_root.R_end},
                       {"evaluations", static_cast<double>(evaluations)},
                       {"bisection_steps", static_cast<double>(root.iterations)},
                       {"nodes_at_root", static_cast<double>(at_root.node_count)},
                       {"ode_tol", ode_tol}};
    return out;
}

/// Largest l whose first critical value does not exceed beta (inclusive at
/// the boundary, to the relative `boundary_tol`); empty when beta < beta_{1,0}.
inline std::optional<int> max_bound_l(const PotentialSpec& spec, double beta, double boundary_tol = 5e-8) {
    if (!(beta >= 0.0)) throw Error(Errc::domain, "max_bound_l: beta must be nonnegative");
    const double probe = beta * (1.0 + boundary_tol);
    std::optional<int> best;
    for (int l = 0;; ++l) {
        if (l > 0 && classical_threshold(spec, l) >= probe) break;
        if (count_bound_states(spec, probe, l) < 1) break;
        best = l;
    }
    return best;
}

}  // namespace critpot
