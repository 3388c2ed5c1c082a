#include <cmath>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>
#include <gtest/gtest.h>

#include "critpot/phase.hpp"
#include "critpot/shooting.hpp"
#include "golden_tables.hpp"

using namespace critpot;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Phase, DeltaValues) {
    EXPECT_EQ(delta_l(0), 0.0);
    EXPECT_NEAR(delta_l(1), std::atan(std::sqrt(0.5)), 1e-16);
    EXPECT_NEAR(delta_l(1000), std::numbers::pi / 4.0, 5e-4);
    EXPECT_THROW(delta_l(-1), Error);
}

TEST(Phase, ZeroCouplingLimitIsDelta) {
    for (int l = 0; l <= 10; ++l) {
        const auto st = eta_infinity({builtin("exponential"), 0.0, l});
        EXPECT_NEAR(st.eta_end, delta_l(l), 1e-10) << "l=" << l;
        EXPECT_EQ(st.crossings(), 0);
    }
}

TEST(Phase, GaussianHighAngularMomentum) {
    EXPECT_LT(rel(critical_beta_phase(builtin("gaussian"), 1, 7).beta, 182.17789), 1e-7);
    EXPECT_LT(rel(critical_beta_phase(builtin("gaussian"), 2, 7).beta, 251.54239), 1e-7);
}

TEST(Phase, EtaCrossesLevelAtCriticalValue) {
    // beta_{2,1} = 16.921126 for the exponential well.
    const auto spec = builtin("exponential");
    const auto below = eta_infinity({spec, 16.921126 * (1.0 - 1e-6), 1});
    const auto above = eta_infinity({spec, 16.921126 * (1.0 + 1e-6), 1});
    EXPECT_LT(below.eta_end, below.target(2));
    EXPECT_GT(above.eta_end, above.target(2));
    EXPECT_GT(below.eta_end, below.target(1));
    EXPECT_NEAR(above.target(2) - above.target(1), std::numbers::pi, 1e-15);
}

TEST(Phase, LevelsApproachAsymptoticForm) {
    // target(n) -> delta_l - pi/2 + n pi for large R.
    for (int l = 1; l <= 4; ++l) {
        const auto st = eta_infinity({builtin("gaussian"), 5.0, l});
        EXPECT_NEAR(st.target(1), delta_l(l) + 0.5 * std::numbers::pi, 0.05) << "l=" << l;
    }
}

TEST(Phase, StaircaseMatchesNodeCount) {
    const auto spec = builtin("yukawa");
    for (int l = 0; l <= 2; ++l) {
        int prev = 0;
        for (double beta = 0.5; beta < 80.0; beta += 2.3) {
            const int c = count_bound_states_phase(spec, beta, l);
            EXPECT_GE(c, prev);
            EXPECT_EQ(c, count_bound_states(spec, beta, l)) << "beta=" << beta << " l=" << l;
            prev = c;
        }
    }
}

TEST(Phase, AgreesWithShooting) {
    for (const char* name : {"exponential", "hulthen", "gaussian"}) {
        for (int n = 1; n <= 2; ++n) {
            for (int l = 0; l <= 2; ++l) {
                const double p = critical_beta_phase(builtin(name), n, l).beta;
                const double s = critical_beta_shoot(builtin(name), n, l).beta;
                EXPECT_LT(rel(p, s), 1e-9) << name << " n=" << n << " l=" << l;
            }
        }
    }
}

TEST(Phase, StabilizersAgree) {
    const auto spec = builtin("exponential");
    for (int l : {0, 2}) {
        const double a = critical_beta_phase(spec, 2, l, 1e-11, Stabilizer::sqrt_U0).beta;
        const double b = critical_beta_phase(spec, 2, l, 1e-11, Stabilizer::unity).beta;
        EXPECT_LT(rel(a, b), 1e-9) << "l=" << l;
    }
}

TEST(Phase, CompactSupportUsesUnityAtZeroL) {
    const auto spec = builtin("cutoff", {{"s", 1.0}});
    EXPECT_EQ(default_stabilizer({spec, 3.0, 0}), Stabilizer::unity);
    EXPECT_EQ(default_stabilizer({spec, 3.0, 1}), Stabilizer::sqrt_U0);
    try {
        eta_infinity({spec, 3.0, 0}, 1e-12, Stabilizer::sqrt_U0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::unsupported);
    }
    const auto r = critical_beta_phase(spec, 1, 0);
    EXPECT_EQ(r.diagnostics.at("unity_stabilizer"), 1.0);
    EXPECT_LT(rel(r.beta, 0.25 * std::pow(2.4048255576957728, 2)), 1e-9);
}

TEST(Phase, HighAngularMomentumCutoff) {
    // beta_{1,20} for v = 1 inside r < 1 is j_{39/2,1}^2.
    const double j = boost::math::cyl_bessel_j_zero(19.5, 1);
    EXPECT_LT(rel(critical_beta_phase(builtin("cutoff"), 1, 20, 1e-12).beta, j * j), 1e-11);
}

TEST(Phase, TailLogDerivatives) {
    const double beta = 3.0;
    const double r = 25.0;
    EXPECT_DOUBLE_EQ(tail_log_derivative(builtin("exponential"), beta, r), beta * std::exp(-r));
    EXPECT_DOUBLE_EQ(tail_log_derivative(builtin("yukawa"), beta, r), beta * std::exp(-r) / r);
    EXPECT_DOUBLE_EQ(tail_log_derivative(builtin("gaussian"), beta, 3.0), 0.5 * beta * std::exp(-9.0) / 3.0);
    EXPECT_DOUBLE_EQ(tail_log_derivative(builtin("woods-saxon", {{"x0", 0.5}}), beta, r), beta * std::exp(-r) / 0.5);
    EXPECT_EQ(tail_log_derivative(builtin("cutoff"), beta, 2.0), 0.0);
    EXPECT_THROW(tail_log_derivative(builtin("cutoff"), beta, 0.0), Error);

    PotentialSpec slow;
    slow.name = "power";
    slow.v = [](double x) { return std::pow(1.0 + x, -3.0); };
    slow.tail_kind = TailKind::power_law;
    slow.tail_mu = 3.0;
    EXPECT_DOUBLE_EQ(tail_log_derivative(slow, beta, 100.0), beta * std::pow(100.0, -2.0) / 2.0);

    PotentialSpec other;
    other.name = "other";
    other.v = [](double x) { return std::exp(-2.0 * x); };
    EXPECT_NEAR(tail_log_derivative(other, beta, 5.0), beta * 0.5 * std::exp(-10.0), 1e-16);
}

TEST(Phase, ToleranceValidation) {
    EXPECT_THROW(eta_infinity({builtin("yukawa"), 1.0, 0}, 1e-2), Error);
    EXPECT_THROW(critical_beta_phase(builtin("yukawa"), 0, 0), Error);
    EXPECT_EQ(count_bound_states_phase(builtin("yukawa"), 0.0, 0), 0);
}

TEST(Phase, StabilizerNames) {
    EXPECT_STREQ(to_string(Stabilizer::unity), "unity");
    EXPECT_STREQ(to_string(Stabilizer::sqrt_U0), "sqrt_U0");
}

TEST(Phase, StabilizersCountAlike) {
    for (const char* name : {"exponential", "yukawa", "woods-saxon"}) {
        const auto spec = builtin(name);
        for (int l : {0, 1, 3}) {
            for (double beta = 0.7; beta < 90.0; beta *= 1.37) {
                EXPECT_EQ(count_bound_states_phase(spec, beta, l, 1e-12, Stabilizer::unity),
                          count_bound_states_phase(spec, beta, l, 1e-12, Stabilizer::sqrt_U0))
                    << name << " l=" << l << " beta=" << beta;
            }
        }
    }
}
