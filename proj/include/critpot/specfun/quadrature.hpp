#pragma once

#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "critpot/error.hpp"

namespace critpot::specfun {

/// Endpoint behaviour declared by the caller of integrate_adaptive.
enum class Endpoints : unsigned {
    regular = 0,
    singular_lo = 1,  ///< integrand ~ (r - a)^(-1/2) (or milder) at the lower end
    singular_hi = 2,  ///< integrand ~ (b - r)^(-1/2) (or milder) at the upper end
    singular_both = 3,
};

constexpr bool has(Endpoints set, Endpoints flag) {
    return (static_cast<unsigned>(set) & static_cast<unsigned>(flag)) != 0;
}

namespace detail {

constexpr unsigned kMaxDepth = 15;

template <class F>
double gk(F&& f, double a, double b, double tol, double& err_sum, double& l1_sum) {
    double err = 0.0;
    double l1 = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, kMaxDepth, tol, &err, &l1);
    err_sum += err;
    l1_sum += l1;
    return value;
}

}  // namespace detail

/// Adaptive Gauss-Kronrod quadrature of f over [a, b], b may be +infinity.
///
/// Inverse-square-root endpoint singularities are removed with r = a + u^2
/// (mirrored at b); a semi-infinite tail [c, inf) is mapped by r = c + u/(1-u).
/// Throws non_convergence if the error estimate exceeds tol relative to the
/// L1 norm of the integrand, unless `error_out` is given; the absolute error
/// estimate is then stored there and the caller decides.
template <class F>
double integrate_adaptive(F&& f, double a, double b, Endpoints endpoints, double tol, double* error_out = nullptr) {
    if (!(b > a)) {
        if (b == a) return 0.0;
        throw Error(Errc::domain, "integrate_adaptive: b < a");
    }
    if (std::isinf(b) && has(endpoints, Endpoints::singular_hi)) {
        throw Error(Errc::invalid_argument, "integrate_adaptive: singular flag on an infinite endpoint");
    }
    double err = 0.0;
    double l1 = 0.0;
    double total = 0.0;

    // Finite part [a, c] and optional tail [c, inf).
    const bool infinite = std::isinf(b);
    const double c = infinite ? a + 1.0 : b;

    const bool sing_lo = has(endpoints, Endpoints::singular_lo);
    const bool sing_hi = !infinite && has(endpoints, Endpoints::singular_hi);
    const double mid = (sing_lo && sing_hi) ? 0.5 * (a + c) : (sing_lo ? c : a);

    if (sing_lo) {
        auto g = [&](double u) { return 2.0 * u * f(a + u * u); };
        total += detail::gk(g, 0.0, std::sqrt(mid - a), tol, err, l1);
    }
    if (sing_hi) {
        auto g = [&](double u) { return 2.0 * u * f(c - u * u); };
        total += detail::gk(g, 0.0, std::sqrt(c - mid), tol, err, l1);
    }
    if (!sing_lo && !sing_hi) {
        total += detail::gk(f, a, c, tol, err, l1);
    }
    if (infinite) {
        auto g = [&](double u) {
            const double w = 1.0 - u;
            return f(c + u / w) / (w * w);
        };
        total += detail::gk(g, 0.0, 1.0, tol, err, l1);
    }
    if (error_out) {
        *error_out = err;
        if (!std::isfinite(total)) throw Error(Errc::non_convergence, "integrate_adaptive: non-finite result");
        return total;
    }
    if (!std::isfinite(total) || err > 10.0 * tol * std::max(l1, std::numeric_limits<double>::min())) {
        throw Error(Errc::non_convergence, "integrate_adaptive: error estimate above tolerance");
    }
    return total;
}

}  // namespace critpot::specfun
