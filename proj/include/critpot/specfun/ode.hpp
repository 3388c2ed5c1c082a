#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "critpot/error.hpp"

namespace critpot::specfun {

template <std::size_t N>
using State = std::array<double, N>;

/// Initial-value problem y' = rhs(t, y) on [t0, t1], t1 > t0.
template <std::size_t N>
struct OdeProblem {
    std::function<void(double, const State<N>&, State<N>&)> rhs;
    double t0 = 0.0;
    double t1 = 1.0;
    State<N> y0{};
    double tol = 1e-12;  ///< local relative error per step, in [1e-14, 1e-6]
    /// Rescale the state whenever max|y_i| exceeds this (0 disables). Only
    /// meaningful for linear homogeneous systems.
    double renorm_threshold = 0.0;
    /// Interior points where the right-hand side is discontinuous; steps never
    /// straddle them.
    std::vector<double> breakpoints;
    std::size_t max_steps = 2'000'000;
};

template <std::size_t N>
struct DenseSample {
    double t;
    State<N> y;
    State<N> dy;
    double log_scale;  ///< accumulated log of renormalizations up to t
};

template <std::size_t N>
struct OdeSolution {
    State<N> y_end{};
    double t_end = 0.0;
    double log_scale = 0.0;  ///< true state = y * exp(log_scale)
    std::size_t steps = 0;
    std::size_t rejected = 0;
    std::size_t renormalizations = 0;
    std::vector<DenseSample<N>> samples;  ///< filled when dense output was requested

    /// Cubic Hermite interpolation between recorded steps, in the scale of the
    /// sample at the left end of the containing step.
    State<N> at(double t) const {
        if (samples.empty()) throw Error(Errc::invalid_argument, "OdeSolution::at: no dense output recorded");
        auto it = std::lower_bound(samples.begin(), samples.end(), t,
                                   [](const DenseSample<N>& s, double x) { return s.t < x; });
        if (it == samples.begin()) return samples.front().y;
        if (it == samples.end()) return samples.back().y;
        const auto& a = *(it - 1);
        const auto& b = *it;
        const double h = b.t - a.t;
        const double s = (t - a.t) / h;
        const double rescale = std::exp(b.log_scale - a.log_scale);
        const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
        const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
        State<N> y{};
        for (std::size_t i = 0; i < N; ++i) {
            y[i] = h00 * a.y[i] + h10 * h * a.dy[i] + rescale * (h01 * b.y[i] + h11 * h * b.dy[i]);
        }
        return y;
    }
};

/// Observer invoked after every accepted step with (t_prev, y_prev, t, y);
/// both states are in the current renormalized scale.
template <std::size_t N>
using StepObserver = std::function<void(double, const State<N>&, double, const State<N>&)>;

/// Adaptive Runge-Kutta-Fehlberg 7(8) integration with optional renormalization.
template <std::size_t N>
OdeSolution<N> solve_ode(const OdeProblem<N>& problem, const StepObserver<N>& observer = {},
                         bool record_dense = false) {
    namespace odeint = boost::numeric::odeint;
    if (!(problem.tol >= 1e-14 && problem.tol <= 1e-6)) {
        throw Error(Errc::invalid_argument, "solve_ode: tolerance must lie in [1e-14, 1e-6]");
    }
    if (!(problem.t1 > problem.t0)) {
        throw Error(Errc::invalid_argument, "solve_ode: empty interval");
    }
    using Stepper = odeint::runge_kutta_fehlberg78<State<N>>;
    auto controlled = odeint::make_controlled(problem.tol * 1e-3, problem.tol, Stepper());
    // Stage times are clamped into the current segment so that a discontinuous
    // right-hand side is sampled by its one-sided limit at a breakpoint.
    double seg_lo = -std::numeric_limits<double>::infinity();
    double seg_hi = std::numeric_limits<double>::infinity();
    auto system = [&](const State<N>& y, State<N>& dy, double t) { problem.rhs(std::clamp(t, seg_lo, seg_hi), y, dy); };

    std::vector<double> stops;
    for (double b : problem.breakpoints) {
        if (b > problem.t0 && b < problem.t1) stops.push_back(b);
    }
    std::sort(stops.begin(), stops.end());
    stops.push_back(problem.t1);

    OdeSolution<N> sol;
    State<N> y = problem.y0;
    double t = problem.t0;
    double dt = std::max(1e-3 * (problem.t1 - problem.t0), 1e-6 * std::max(std::abs(t), 1e-300));
    dt = std::min(dt, 1e-2 * std::max(std::abs(t), 1e-3));

    auto record = [&](double tt, const State<N>& yy) {
        if (!record_dense) return;
        State<N> dy{};
        problem.rhs(tt, yy, dy);
        sol.samples.push_back({tt, yy, dy, sol.log_scale});
    };
    record(t, y);

    for (std::size_t k = 0; k < stops.size(); ++k) {
        const double stop = stops[k];
        seg_lo = k == 0 ? -std::numeric_limits<double>::infinity()
                        : std::nextafter(stops[k - 1], std::numeric_limits<double>::infinity());
        seg_hi = k + 1 == stops.size() ? std::numeric_limits<double>::infinity()
                                       : std::nextafter(stop, -std::numeric_limits<double>::infinity());
        while (t < stop) {
            if (sol.steps + sol.rejected > problem.max_steps) {
                throw Error(Errc::non_convergence, "solve_ode: step budget exhausted");
            }
            const bool last = dt >= stop - t;
            double h = last ? stop - t : dt;
            const double t_prev = t;
            const State<N> y_prev = y;
            double t_try = t;
            if (controlled.try_step(system, y, t_try, h) == odeint::fail) {
                ++sol.rejected;
                dt = h;
                if (dt < 1e-15 * std::max(std::abs(t), 1e-300)) {
                    throw Error(Errc::step_underflow, "solve_ode: step size underflow");
                }
                continue;
            }
            ++sol.steps;
            // Land exactly on the stop point to avoid round-off drift.
            t = last ? stop : t_try;
            if (!last || h > dt) dt = h;
            if (problem.renorm_threshold > 0.0) {
                double mag = 0.0;
                for (double v : y) mag = std::max(mag, std::abs(v));
                if (mag > problem.renorm_threshold) {
                    State<N> scaled_prev = y_prev;
                    for (auto& v : y) v /= mag;
                    for (auto& v : scaled_prev) v /= mag;
                    sol.log_scale += std::log(mag);
                    ++sol.renormalizations;
                    if (observer) observer(t_prev, scaled_prev, t, y);
                    record(t, y);
                    continue;
                }
            }
            if (observer) observer(t_prev, y_prev, t, y);
            record(t, y);
        }
    }
    sol.y_end = y;
    sol.t_end = t;
    return sol;
}

}  // namespace critpot::specfun
