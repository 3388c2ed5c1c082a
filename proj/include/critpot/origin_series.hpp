#pragma once

#include <cmath>
#include <vector>

#include "critpot/error.hpp"
#include "critpot/potential.hpp"

namespace critpot {

/// Regular solution near the origin,
///   chi(r) = r^(l+1) [1 + sum_i r^i (b_i + r^(1-q) c_i)],
/// stored internally as chi = r^(l+1) sum_j a_j r^(j*step) with a_0 = 1 and
/// step = 1 (integer q) or 1/2 (half-integer q).
struct OriginSeries {
    int l = 0;
    double q = 0.0;
    double lambda = 0.0;  ///< beta * g_tilde
    int order = 0;        ///< K: terms b_i, c_i with i <= K are retained
    double step = 1.0;
    std::vector<double> a;
    double r_start = 0.0;

    /// Coefficient of r^(l+1+e) for exponent e = j*step, zero when absent.
    double coefficient(double e) const {
        const double jj = e / step;
        const long j = std::lround(jj);
        if (std::abs(jj - j) > 1e-9 || j < 0 || j >= static_cast<long>(a.size())) return 0.0;
        return a[j];
    }

    /// b_1..b_K (index 0 unused).
    std::vector<double> b() const {
        std::vector<double> out(order + 1, 0.0);
        // For integer q every power is attributed to the c-family.
        if (step == 1.0) return out;
        for (int i = 1; i <= order; ++i) out[i] = coefficient(i);
        return out;
    }

    /// c_1..c_K (index 0 unused).
    std::vector<double> c() const {
        std::vector<double> out(order + 1, 0.0);
        for (int i = 1; i <= order; ++i) out[i] = coefficient(i + 1.0 - q);
        return out;
    }
};

struct ChiSlope {
    double chi;
    double chi_prime;
};

namespace detail {

inline bool is_half_integer_multiple(double q) {
    const double twice = 2.0 * q;
    return std::abs(twice - std::round(twice)) < 1e-12;
}

}  // namespace detail

/// Series coefficients from the origin expansion of v, with the launch radius
/// chosen so that the last retained term is below 1e-14 of the leading one.
inline OriginSeries build_series(const EffectiveProblem& problem, int order = 12) {
    validate(problem);
    const PotentialSpec& spec = problem.spec;
    if (!(spec.q < 2.0)) throw Error(Errc::invalid_argument, "build_series: q must be below 2");
    if (order < 2) throw Error(Errc::invalid_argument, "build_series: order must be at least 2");
    if (!detail::is_half_integer_multiple(spec.q)) {
        throw Error(Errc::unsupported, "build_series: origin series needs integer or half-integer q");
    }
    if (!spec.origin_coeffs) throw Error(Errc::unsupported, "build_series: potential has no origin expansion");

    OriginSeries series;
    series.l = problem.l;
    series.q = spec.q;
    series.lambda = problem.beta * spec.g_tilde;
    series.order = order;
    const bool integer_q = std::abs(spec.q - std::round(spec.q)) < 1e-12;
    series.step = integer_q ? 1.0 : 0.5;
    const double u = series.step;

    const double max_exponent = order + std::max(0.0, 1.0 - spec.q);
    const int J = static_cast<int>(std::lround(max_exponent / u));
    // Term a_j couples to a_i through g_k with i = j - (k + 2 - q)/u.
    const int K = static_cast<int>(std::ceil(max_exponent)) + 2;
    const std::vector<double> g = spec.origin_coeffs(K);

    series.a.assign(J + 1, 0.0);
    series.a[0] = 1.0;
    const double two_l1 = 2.0 * problem.l + 1.0;
    for (int j = 1; j <= J; ++j) {
        double acc = 0.0;
        for (int k = 0; k < K; ++k) {
            const double shift = (k + 2.0 - spec.q) / u;
            const long d = std::lround(shift);
            if (d > j) break;
            acc += g[k] * series.a[j - d];
        }
        const double e = j * u;
        series.a[j] = -problem.beta * acc / (e * (two_l1 + e));
    }

    // Launch radius: every one of the last few retained terms below 1e-14.
    double r_start = 0.1;
    if (spec.support_end) r_start = std::min(r_start, 0.5 * *spec.support_end);
    const int tail_terms = std::max(1, static_cast<int>(std::lround(2.0 / u)));
    for (int j = J; j > J - tail_terms && j > 0; --j) {
        const double aj = std::abs(series.a[j]);
        if (aj > 0.0) r_start = std::min(r_start, std::pow(1e-14 / aj, 1.0 / (j * u)));
    }
    series.r_start = r_start;
    return series;
}

/// chi and chi' of the truncated series.
inline ChiSlope eval_chi_and_slope(const OriginSeries& series, double r) {
    if (!(r > 0.0)) throw Error(Errc::domain, "eval_chi_and_slope: r must be positive");
    double sum = 0.0;
    double dsum = 0.0;  // d/dr of the bracket, times r
    for (std::size_t j = series.a.size(); j-- > 0;) {
        const double e = j * series.step;
        const double term = series.a[j] * std::pow(r, e);
        sum += term;
        dsum += e * term;
    }
    const double lead = std::pow(r, series.l + 1.0);
    const double chi = lead * sum;
    const double chi_prime = lead / r * ((series.l + 1.0) * sum + dsum);
    return {chi, chi_prime};
}

/// chi'/chi of the truncated series, free of the r^(l+1) scale.
inline double series_log_derivative(const OriginSeries& series, double r) {
    double sum = 0.0;
    double dsum = 0.0;
    for (std::size_t j = series.a.size(); j-- > 0;) {
        const double e = j * series.step;
        const double term = series.a[j] * std::pow(r, e);
        sum += term;
        dsum += e * term;
    }
    return ((series.l + 1.0) + dsum / sum) / r;
}

}  // namespace critpot
