#pragma once

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>

#include "critpot/error.hpp"
#include "critpot/specfun/roots.hpp"

namespace critpot::specfun {

/// Region where bessel_j is validated to ~1e-12 relative accuracy.
inline bool bessel_validated(double nu, double x) {
    return std::abs(nu) <= 50.0 && x <= 200.0;
}

/// Bessel function of the first kind J_nu(x) for real order and x >= 0.
inline double bessel_j(double nu, double x) {
    if (!(x >= 0.0)) {
        throw Error(Errc::domain, "bessel_j: x must be nonnegative");
    }
    if (x == 0.0) {
        if (nu == 0.0) return 1.0;
        if (nu > 0.0 || nu == std::floor(nu)) return 0.0;
        throw Error(Errc::domain, "bessel_j: J_nu(0) is singular for negative non-integer nu");
    }
    return boost::math::cyl_bessel_j(nu, x);
}

/// McMahon's large-zero expansion for j_{nu,n}, three terms.
inline double mcmahon_zero(double nu, int n) {
    const double mu = 4.0 * nu * nu;
    const double b = (n + 0.5 * nu - 0.25) * std::numbers::pi;
    return b - (mu - 1.0) / (8.0 * b) - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * std::pow(8.0 * b, 3));
}

namespace detail {

/// Magnitude of the last retained McMahon term; a cheap accuracy estimate.
inline double mcmahon_last_term(double nu, int n) {
    const double mu = 4.0 * nu * nu;
    const double b = (n + 0.5 * nu - 0.25) * std::numbers::pi;
    return std::abs(4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * std::pow(8.0 * b, 3)));
}

}  // namespace detail

/// n-th positive zero of J_nu, nu > -1.
///
/// Seeded by McMahon's expansion when its last term is below 1e-3 (the seed is
/// then far closer than half the zero spacing); otherwise the zeros are counted
/// by a sign-change scan from the origin. Refined by bisection.
inline double bessel_zero(double nu, int n) {
    if (!(nu > -1.0)) {
        throw Error(Errc::domain, "bessel_zero: order must exceed -1");
    }
    if (n < 1) {
        throw Error(Errc::domain, "bessel_zero: n must be positive");
    }
    auto J = [nu](double x) { return bessel_j(nu, x); };
    constexpr double rel_tol = 1e-15;

    if (detail::mcmahon_last_term(nu, n) < 1e-3) {
        const double seed = mcmahon_zero(nu, n);
        const double lo = seed - 0.4;
        const double hi = seed + 0.4;
        if (lo > 0.0 && std::signbit(J(lo)) != std::signbit(J(hi))) {
            return bisect(J, {lo, hi, rel_tol}).root;
        }
    }

    // Consecutive zeros are separated by more than 2.4 for nu > -1, so a step
    // of 0.25 never straddles two of them.
    constexpr double step = 0.25;
    double x = nu > 0.0 ? nu : 1e-6;
    double fx = J(x);
    int found = 0;
    while (true) {
        const double x_next = x + step;
        const double f_next = J(x_next);
        if (f_next == 0.0) {
            if (++found == n) return x_next;
        } else if (fx != 0.0 && std::signbit(fx) != std::signbit(f_next)) {
            if (++found == n) return bisect(J, {x, x_next, rel_tol}).root;
        }
        x = x_next;
        fx = f_next;
    }
}

}  // namespace critpot::specfun
