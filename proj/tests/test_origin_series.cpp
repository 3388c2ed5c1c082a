#include <cmath>

#include <gtest/gtest.h>

#include "critpot/origin_series.hpp"
#include "critpot/specfun/bessel.hpp"
#include "critpot/specfun/ode.hpp"

using namespace critpot;

namespace {

/// Integrate chi'' = U chi from the series launch to r_end.
ChiSlope integrate_to(const EffectiveProblem& pr, double r_end) {
    const auto series = build_series(pr, 12);
    const auto s0 = eval_chi_and_slope(series, series.r_start);
    specfun::OdeProblem<2> ode;
    ode.rhs = [&](double r, const specfun::State<2>& y, specfun::State<2>& dy) {
        dy[0] = y[1];
        dy[1] = eval_U(pr, r) * y[0];
    };
    ode.t0 = series.r_start;
    ode.t1 = r_end;
    ode.y0 = {s0.chi, s0.chi_prime};
    ode.tol = 1e-13;
    if (pr.spec.support_end) ode.breakpoints = {*pr.spec.support_end};
    const auto sol = specfun::solve_ode(ode);
    return {sol.y_end[0], sol.y_end[1]};
}

}  // namespace

TEST(OriginSeries, FirstCoefficient) {
    // c_1 = -beta g_tilde / ((2 - q)(2l + 3 - q))
    struct Case {
        const char* name;
        double q;
    };
    for (auto c : {Case{"exponential", 0.0}, Case{"yukawa", 1.0}, Case{"hulthen", 1.0}, Case{"gaussian", 0.0}}) {
        for (int l : {0, 1, 3}) {
            const double beta = 2.7;
            const auto s = build_series({builtin(c.name), beta, l}, 12);
            const double expect = -beta / ((2.0 - c.q) * (2.0 * l + 3.0 - c.q));
            EXPECT_NEAR(s.c()[1], expect, 1e-14) << c.name << " l=" << l;
        }
    }
}

TEST(OriginSeries, HalfIntegerExponentUsesHalfSteps) {
    const auto s = build_series({builtin("cutoff", {{"s", 1.5}}), 2.0, 1}, 12);
    EXPECT_EQ(s.step, 0.5);
    // Leading correction sits at r^{l+1+1/2}.
    EXPECT_NE(s.b()[1], 0.0);
    EXPECT_NEAR(s.coefficient(0.5), -2.0 / (0.5 * (2.0 + 0.5 + 1.0)), 1e-14);
}

TEST(OriginSeries, IntegerExponentHasNoBFamily) {
    const auto s = build_series({builtin("yukawa"), 5.0, 2}, 12);
    for (double b : s.b()) EXPECT_EQ(b, 0.0);
}

TEST(OriginSeries, UnsupportedExponent) {
    auto spec = builtin("cutoff", {{"s", 0.3}});
    try {
        build_series({spec, 1.0, 0}, 12);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::unsupported);
    }
}

TEST(OriginSeries, RejectsTinyOrder) { EXPECT_THROW(build_series({builtin("exponential"), 1.0, 0}, 1), Error); }

TEST(OriginSeries, ConstantPotentialIsBessel) {
    // v = 1 inside the cutoff: chi = sqrt(r) J_{l+1/2}(sqrt(beta) r) up to scale.
    for (int l : {0, 1, 4}) {
        const double beta = 9.0;
        const auto s = build_series({builtin("cutoff", {{"s", 0.0}}), beta, l}, 12);
        for (double r : {0.01, s.r_start}) {
            const double k = std::sqrt(beta);
            const double ref_ld = (0.5 / r) + k * (specfun::bessel_j(l - 0.5, k * r) / specfun::bessel_j(l + 0.5, k * r)) -
                                  (l + 0.5) / r;
            EXPECT_NEAR(series_log_derivative(s, r), ref_ld, 1e-12 * std::abs(ref_ld)) << "l=" << l;
        }
    }
}

TEST(OriginSeries, InverseSquareRootPotentialIsBessel) {
    // v = r^{-1} inside the cutoff: chi = sqrt(r) J_{2l+1}(2 sqrt(beta r)).
    const double beta = 4.0;
    for (int l : {0, 2}) {
        const auto s = build_series({builtin("cutoff", {{"s", 1.0}}), beta, l}, 12);
        const double r = s.r_start;
        const double x = 2.0 * std::sqrt(beta * r);
        const double nu = 2.0 * l + 1.0;
        const double jp = 0.5 * (specfun::bessel_j(nu - 1.0, x) - specfun::bessel_j(nu + 1.0, x));
        const double ref = 0.5 / r + jp / specfun::bessel_j(nu, x) * std::sqrt(beta / r);
        EXPECT_NEAR(series_log_derivative(s, r), ref, 1e-12 * ref) << "l=" << l;
    }
}

TEST(OriginSeries, LaunchRadiusTruncation) {
    for (double beta : {0.1, 10.0, 1000.0}) {
        const auto s = build_series({builtin("exponential"), beta, 0}, 12);
        EXPECT_GT(s.r_start, 0.0);
        EXPECT_LE(s.r_start, 0.1);
        const double last = std::abs(s.a.back()) * std::pow(s.r_start, (s.a.size() - 1) * s.step);
        EXPECT_LE(last, 1.01e-14);
    }
}

TEST(OriginSeries, ChiAndSlopeConsistent) {
    const auto s = build_series({builtin("hulthen"), 3.0, 2}, 12);
    const double r = s.r_start;
    const auto cs = eval_chi_and_slope(s, r);
    EXPECT_NEAR(cs.chi_prime / cs.chi, series_log_derivative(s, r), 1e-12 * std::abs(cs.chi_prime / cs.chi));
    EXPECT_THROW(eval_chi_and_slope(s, 0.0), Error);
}

TEST(OriginSeries, IntegratedSolutionMatchesExponentialBessel) {
    // For v = e^{-r}, l = 0: chi ∝ J_0(2 sqrt(beta) e^{-r/2}) Y_0(2 sqrt(beta)) - Y_0(...) J_0(2 sqrt(beta)).
    // Use the log-derivative at r = 3 from the exact form.
    const double beta = 2.0;
    const double z0 = 2.0 * std::sqrt(beta);
    auto chi = [&](double r) {
        const double z = z0 * std::exp(-0.5 * r);
        return boost::math::cyl_bessel_j(0, z) * boost::math::cyl_neumann(0, z0) -
               boost::math::cyl_neumann(0, z) * boost::math::cyl_bessel_j(0, z0);
    };
    const double r = 3.0;
    const double h = 1e-5;
    const double ref = (chi(r + h) - chi(r - h)) / (2.0 * h) / chi(r);
    const auto end = integrate_to({builtin("exponential"), beta, 0}, r);
    EXPECT_NEAR(end.chi_prime / end.chi, ref, 1e-8 * std::abs(ref));
}
