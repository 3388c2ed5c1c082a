#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "critpot/asymptotics.hpp"
#include "critpot/potential.hpp"

using namespace critpot;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

std::vector<PotentialSpec> all_builtins() {
    return {builtin("exponential"),          builtin("hulthen"),  builtin("yukawa"), builtin("gaussian"),
            builtin("woods-saxon", {{"x0", 1.0}}), builtin("woods-saxon", {{"x0", 0.001}}),
            builtin("cutoff", {{"s", 0.0}}), builtin("cutoff", {{"s", 1.0}}), builtin("cutoff", {{"s", 1.5}})};
}

}  // namespace

TEST(Potential, BuiltinValues) {
    EXPECT_NEAR(builtin("exponential").v(1.0), std::exp(-1.0), 1e-16);
    EXPECT_NEAR(builtin("hulthen").v(1.0), 1.0 / (std::exp(1.0) - 1.0), 1e-15);
    EXPECT_NEAR(builtin("yukawa").v(2.0), std::exp(-2.0) / 2.0, 1e-16);
    EXPECT_NEAR(builtin("gaussian").v(1.5), std::exp(-2.25), 1e-16);
    EXPECT_NEAR(builtin("woods-saxon", {{"x0", 0.5}}).v(1.0), 1.0 / (1.0 + 0.5 * std::exp(1.0)), 1e-15);
    const auto c = builtin("cutoff", {{"s", 1.0}});
    EXPECT_DOUBLE_EQ(c.v(0.5), 2.0);
    EXPECT_DOUBLE_EQ(c.v(1.0), 1.0);
    EXPECT_EQ(c.v(1.5), 0.0);
}

TEST(Potential, OriginExponents) {
    EXPECT_EQ(builtin("exponential").q, 0.0);
    EXPECT_EQ(builtin("hulthen").q, 1.0);
    EXPECT_EQ(builtin("hulthen").p, 1.0);
    EXPECT_EQ(builtin("yukawa").s, 1.0);
    EXPECT_EQ(builtin("gaussian").q, 0.0);
    EXPECT_EQ(builtin("cutoff", {{"s", 1.5}}).q, 1.5);
}

TEST(Potential, DefaultParameters) {
    EXPECT_EQ(builtin("woods-saxon").params.at("x0"), 1.0);
    EXPECT_EQ(builtin("cutoff").params.at("s"), 0.0);
}

TEST(Potential, RejectsBadParameters) {
    EXPECT_THROW(builtin("nope"), Error);
    EXPECT_THROW(builtin("yukawa", {{"x0", 1.0}}), Error);
    EXPECT_THROW(builtin("woods-saxon", {{"x0", 0.0}}), Error);
    EXPECT_THROW(builtin("woods-saxon", {{"x0", -1.0}}), Error);
    EXPECT_THROW(builtin("cutoff", {{"s", 2.0}}), Error);
    EXPECT_THROW(builtin("cutoff", {{"s", std::nan("")}}), Error);
    try {
        builtin("cutoff", {{"s", 2.5}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::invalid_argument);
    }
}

TEST(Potential, ValidateRejectsPowerTailWithoutDecay) {
    PotentialSpec spec;
    spec.name = "slow";
    spec.v = [](double r) { return std::pow(1.0 + r, -2.0); };
    spec.tail_kind = TailKind::power_law;
    spec.tail_mu = 2.0;
    EXPECT_THROW(validate(spec), Error);
    spec.tail_mu = 3.0;
    EXPECT_NO_THROW(validate(spec));
}

TEST(Potential, EvaluationDomain) {
    const auto spec = builtin("exponential");
    EXPECT_THROW(eval_v(spec, 0.0), Error);
    EXPECT_THROW(eval_U({spec, 1.0, 0}, -1.0), Error);
    EXPECT_NEAR(eval_U({spec, 3.0, 2}, 2.0), -3.0 * std::exp(-2.0) + 6.0 / 4.0, 1e-15);
    EXPECT_THROW(validate(EffectiveProblem{spec, -1.0, 0}), Error);
    EXPECT_THROW(validate(EffectiveProblem{spec, 1.0, -1}), Error);
}

TEST(Potential, DerivativesMatchFiniteDifferences) {
    for (const auto& spec : all_builtins()) {
        const double edge = spec.support_end.value_or(inf);
        for (double r : {0.05, 0.3, 0.7, 1.3, 2.5, 4.0}) {
            if (std::abs(r - edge) < 0.02) continue;
            const double h = 1e-5 * r;
            const double d1 = (spec.v(r + h) - spec.v(r - h)) / (2.0 * h);
            const double d2 = (spec.v(r + h) - 2.0 * spec.v(r) + spec.v(r - h)) / (h * h);
            const double v = std::abs(spec.v(r));
            const double v1 = std::abs(spec.v_prime(r));
            const double v2 = std::abs(spec.v_second(r));
            EXPECT_NEAR(spec.v_prime(r), d1, 1e-7 * (v1 + v / r)) << spec.name << " r=" << r;
            EXPECT_NEAR(spec.v_second(r), d2, 1e-5 * (v2 + v1 / r + v / (r * r))) << spec.name << " r=" << r;
            if (spec.v(r) > 0.0) {
                EXPECT_NEAR(log_derivative_v(spec, r), spec.v_prime(r) / spec.v(r), 1e-12 / r);
            }
        }
    }
}

TEST(Potential, LogDerivativeStableInDeepTail) {
    EXPECT_DOUBLE_EQ(log_derivative_v(builtin("woods-saxon", {{"x0", 1.0}}), 800.0), -1.0);
    EXPECT_NEAR(log_derivative_v(builtin("hulthen"), 900.0), -1.0, 1e-15);
    EXPECT_DOUBLE_EQ(log_derivative_v(builtin("gaussian"), 40.0), -80.0);
}

TEST(Potential, TailIntegralsMatchQuadrature) {
    for (const auto& spec : all_builtins()) {
        const double edge = spec.support_end.value_or(inf);
        for (double r : {0.2, 0.9, 2.0, 5.0}) {
            const double ref = r >= edge ? 0.0
                                         : specfun::integrate_adaptive([&](double t) { return spec.v(t); }, r, edge,
                                                                       specfun::Endpoints::regular, 1e-13);
            EXPECT_NEAR(spec.tail_integral(r), ref, 1e-11 * std::max(ref, 1e-3)) << spec.name << " r=" << r;
        }
    }
}

TEST(Potential, TailIntegralFallsBackToQuadrature) {
    auto spec = builtin("gaussian");
    const double closed = tail_integral(spec, 0.8);
    spec.tail_integral = {};
    EXPECT_NEAR(tail_integral(spec, 0.8), closed, 1e-12);
}

TEST(Potential, SqrtVIntegralClosedFormsMatchQuadrature) {
    for (const auto& spec : all_builtins()) {
        if (!spec.sqrt_v_integral || spec.support_end) continue;
        const double edge = spec.support_end.value_or(inf);
        const double q = specfun::integrate_adaptive([&](double r) { return std::sqrt(spec.v(r)); }, 0.0, edge,
                                                     specfun::Endpoints::singular_lo, 1e-13);
        EXPECT_NEAR(*spec.sqrt_v_integral, q, 1e-10 * q) << spec.name;
    }
    EXPECT_DOUBLE_EQ(*builtin("exponential").sqrt_v_integral, 2.0);
    EXPECT_DOUBLE_EQ(*builtin("hulthen").sqrt_v_integral, std::numbers::pi);
}

TEST(Potential, SqrtVIntegralForCutoff) {
    // With r = u^2 the r^{-s/2} singularity becomes at most u^{-1/2}.
    for (double s : {0.0, 1.0, 1.5}) {
        const auto spec = builtin("cutoff", {{"s", s}});
        const double q = specfun::integrate_adaptive([&](double u) { return 2.0 * u * std::sqrt(spec.v(u * u)); }, 0.0,
                                                     1.0, specfun::Endpoints::singular_lo, 1e-13);
        EXPECT_NEAR(sqrt_v_integral(spec), q, 1e-10 * q) << s;
    }
}

TEST(Potential, OriginCoefficientsReproduceV) {
    for (const auto& spec : all_builtins()) {
        const auto g = spec.origin_coeffs(16);
        ASSERT_EQ(g.size(), 16u);
        for (double r : {0.01, 0.1, 0.3}) {
            double sum = 0.0;
            for (int k = 15; k >= 0; --k) sum = sum * r + g[k];
            EXPECT_NEAR(std::pow(r, -spec.q) * sum, spec.v(r), 1e-12 * spec.v(r)) << spec.name << " r=" << r;
        }
    }
}

TEST(Potential, NumericDerivativesForAdHocPotential) {
    PotentialSpec spec;
    spec.name = "adhoc";
    spec.v = [](double r) { return std::exp(-r) / (1.0 + r); };
    use_numeric_derivatives(spec);
    const double r = 1.2;
    const double exact = -std::exp(-r) * (2.0 + r) / ((1.0 + r) * (1.0 + r));
    EXPECT_NEAR(spec.v_prime(r), exact, 1e-9);
    EXPECT_FALSE(static_cast<bool>(spec.log_v_prime));
    EXPECT_NEAR(log_derivative_v(spec, r), exact / spec.v(r), 1e-8);
}

TEST(Potential, TailKindNames) {
    EXPECT_STREQ(to_string(builtin("gaussian").tail_kind), "gaussian-like");
    EXPECT_STREQ(to_string(builtin("cutoff").tail_kind), "compact-support");
    EXPECT_STREQ(to_string(builtin("yukawa").tail_kind), "exponential-like");
}

TEST(Potential, BuiltinNameList) {
    const auto& names = builtin_names();
    EXPECT_EQ(names.size(), 6u);
    for (const auto& n : names) EXPECT_NO_THROW(builtin(n));
}
