#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "critpot/error.hpp"
#include "critpot/potential.hpp"
#include "critpot/specfun/quadrature.hpp"
#include "critpot/specfun/roots.hpp"

namespace critpot {

/// Offset gamma_{l,q} of the centrifugal-free first-order quantization,
/// int_0^inf sqrt(beta v) dr = pi (n + gamma_{l,q}).
inline double gamma_lq(int l, double q) {
    if (!(q < 2.0)) throw Error(Errc::domain, "gamma_lq: q must be below 2");
    if (q <= 0.0) return (2.0 * l - 1.0) / 4.0;
    return (2.0 * l - 1.0 + q) / (2.0 * (2.0 - q));
}

/// Limit l -> inf of the minimum of U(r): the root of 2v + r v' = 0, i.e. the
/// maximum of r^2 v(r). Compact-support potentials merge at the support edge.
inline double solve_r_m(const PotentialSpec& spec) {
    if (spec.support_end) return *spec.support_end;
    auto h = [&](double r) { return 2.0 + r * log_derivative_v(spec, r); };
    double lo = 1e-3;
    if (!(h(lo) > 0.0)) throw Error(Errc::non_convergence, "solve_r_m: r^2 v(r) does not rise from the origin");
    for (double hi = lo * 1.05; hi < 1e4; lo = hi, hi *= 1.05) {
        if (!std::isfinite(h(hi))) break;
        if (h(hi) <= 0.0) return specfun::bisect(h, {lo, hi, 1e-15}).root;
    }
    throw Error(Errc::non_convergence, "solve_r_m: no root of 2v + r v' found");
}

/// int_0^inf sqrt(v) dr, closed form when the spec carries one.
inline double sqrt_v_integral(const PotentialSpec& spec) {
    if (spec.sqrt_v_integral) return *spec.sqrt_v_integral;
    const double b = spec.support_end ? *spec.support_end : std::numeric_limits<double>::infinity();
    return specfun::integrate_adaptive([&](double r) { return std::sqrt(spec.v(r)); }, 0.0, b,
                                       specfun::Endpoints::singular_lo, 1e-13);
}

/// Second l-derivative of beta_{n,l} as l -> inf: 2 / (r_m^2 v(r_m)).
inline double d_l(const PotentialSpec& spec) {
    const double rm = solve_r_m(spec);
    return 2.0 / (rm * rm * spec.v(rm));
}

inline double beta_asym_l(const PotentialSpec& spec, int /*n*/, int l) {
    return 0.5 * d_l(spec) * l * (l + 1.0);
}

/// Coupling below which U(r) >= 0 everywhere, so no bound state of this l exists.
inline double classical_threshold(const PotentialSpec& spec, int l) {
    return beta_asym_l(spec, 1, l);
}

namespace detail {

inline double d_n_any(const PotentialSpec& spec) {
    const double I = sqrt_v_integral(spec);
    return 2.0 * std::pow(std::numbers::pi / I, 2);
}

}  // namespace detail

/// Second n-derivative of beta_{n,l} as n -> inf: 2 (pi / int sqrt(v))^2.
/// Compact-support potentials are covered by the closed-form solution instead.
inline double d_n(const PotentialSpec& spec) {
    if (spec.tail_kind == TailKind::compact_support) {
        throw Error(Errc::unsupported, "d_n: use the closed-form cutoff result for compact-support potentials");
    }
    return detail::d_n_any(spec);
}

inline double beta_asym_n(const PotentialSpec& spec, int n, int l) {
    const double a = n + gamma_lq(l, spec.q);
    return 0.5 * d_n(spec) * a * a;
}

struct AsymptoticProfile {
    double r_m;
    double d_l;
    std::optional<double> d_n;  ///< empty for compact-support potentials
    double sqrt_v_integral;
    double a_l() const { return 0.5 * d_l; }
    std::optional<double> a_n() const { return d_n ? std::optional<double>(0.5 * *d_n) : std::nullopt; }
};

inline AsymptoticProfile asymptotic_profile(const PotentialSpec& spec) {
    AsymptoticProfile out;
    out.r_m = solve_r_m(spec);
    out.d_l = 2.0 / (out.r_m * out.r_m * spec.v(out.r_m));
    out.sqrt_v_integral = sqrt_v_integral(spec);
    if (spec.tail_kind != TailKind::compact_support) out.d_n = 2.0 * std::pow(std::numbers::pi / out.sqrt_v_integral, 2);
    return out;
}

/// Critical parameters on an (n, l) grid, n = 1..n_max, l = 0..l_max; cells may be missing.
class BetaGrid {
public:
    BetaGrid(int n_max, int l_max)
        : n_max_(n_max), l_max_(l_max), cells_(static_cast<std::size_t>(n_max) * (l_max + 1)) {
        if (n_max < 1 || l_max < 0) throw Error(Errc::invalid_argument, "BetaGrid: need n_max >= 1, l_max >= 0");
    }

    int n_max() const { return n_max_; }
    int l_max() const { return l_max_; }

    bool contains(int n, int l) const { return n >= 1 && n <= n_max_ && l >= 0 && l <= l_max_; }

    void set(int n, int l, double beta) { cells_.at(index(n, l)) = beta; }

    std::optional<double> get(int n, int l) const {
        if (!contains(n, l)) return std::nullopt;
        return cells_[index(n, l)];
    }

    double at(int n, int l) const {
        auto v = get(n, l);
        if (!v) throw Error(Errc::missing_neighbor, "BetaGrid: missing cell (" + std::to_string(n) + ", " + std::to_string(l) + ")");
        return *v;
    }

private:
    std::size_t index(int n, int l) const {
        if (!contains(n, l)) throw Error(Errc::missing_neighbor, "BetaGrid: cell outside grid");
        return static_cast<std::size_t>(n - 1) * (l_max_ + 1) + l;
    }

    int n_max_;
    int l_max_;
    std::vector<std::optional<double>> cells_;
};

/// Delta_{n,l} = beta_{n,l+1} - 2 beta_{n,l} + beta_{n,l-1}.
inline double delta_nl(const BetaGrid& grid, int n, int l) {
    return grid.at(n, l + 1) - 2.0 * grid.at(n, l) + grid.at(n, l - 1);
}

/// Lambda_{n,l} = beta_{n+1,l} - 2 beta_{n,l} + beta_{n-1,l}.
inline double lambda_nl(const BetaGrid& grid, int n, int l) {
    return grid.at(n + 1, l) - 2.0 * grid.at(n, l) + grid.at(n - 1, l);
}

struct SecondDifferences {
    std::optional<double> delta;
    std::optional<double> lambda;
};

/// Both second differences at (n, l); each is empty when a neighbour is missing.
inline SecondDifferences second_differences(const BetaGrid& grid, int n, int l) {
    SecondDifferences out;
    try {
        out.delta = delta_nl(grid, n, l);
    } catch (const Error&) {
    }
    try {
        out.lambda = lambda_nl(grid, n, l);
    } catch (const Error&) {
    }
    return out;
}

}  // namespace critpot
