#pragma once

#include <cmath>
#include <algorithm>
#include <cstddef>
#include <limits>
#include <sstream>

#include "critpot/error.hpp"

namespace critpot::specfun {

/// A sign-change interval for a scalar function.
struct RootBracket {
    double lo;
    double hi;
    double tol = 1e-14;  ///< relative width at which bisection stops
};

struct RootResult {
    double root;
    double lo;
    double hi;
    std::size_t iterations;

    double half_width() const { return 0.5 * (hi - lo); }
};

namespace detail {

inline bool width_converged(double lo, double hi, double tol) {
    const double scale = std::max(std::abs(lo), std::abs(hi));
    return hi - lo <= tol * scale || hi - lo <= 4.0 * std::numeric_limits<double>::min();
}

}  // namespace detail

/// Plain bisection on `f` over a bracket with f(lo) f(hi) <= 0.
///
/// Deterministic: the sequence of evaluation points depends only on the bracket.
/// Stops when the bracket's relative width drops below `bracket.tol`, or the
/// midpoint no longer separates the endpoints.
template <class F>
RootResult bisect(F&& f, RootBracket bracket) {
    double lo = bracket.lo;
    double hi = bracket.hi;
    if (!(hi > lo)) {
        throw Error(Errc::invalid_argument, "invalid bracket: hi must exceed lo");
    }
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return {lo, lo, lo, 0};
    if (fhi == 0.0) return {hi, hi, hi, 0};
    if (std::signbit(flo) == std::signbit(fhi)) {
        std::ostringstream msg;
        msg << "invalid bracket: no sign change on [" << lo << ", " << hi << "]";
        throw Error(Errc::invalid_argument, msg.str());
    }
    std::size_t it = 0;
    while (!detail::width_converged(lo, hi, bracket.tol)) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        ++it;
        if (fm == 0.0) return {mid, mid, mid, it};
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return {lo + 0.5 * (hi - lo), lo, hi, it};
}

/// Bisection on a monotone predicate: `pred(lo)` is false and `pred(hi)` is
/// true; returns the final bracket around the switch point.
template <class Pred>
RootResult bisect_predicate(Pred&& pred, double lo, double hi, double tol) {
    std::size_t it = 0;
    while (!detail::width_converged(lo, hi, tol)) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        ++it;
        if (pred(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return {lo + 0.5 * (hi - lo), lo, hi, it};
}

/// Root of `f` inside `bracket`, refined by bisection.
template <class F>
double find_root(F&& f, RootBracket bracket) {
    return bisect(std::forward<F>(f), bracket).root;
}

}  // namespace critpot::specfun
