#pragma once

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "critpot/analytic.hpp"
#include "critpot/asymptotics.hpp"
#include "critpot/critical.hpp"
#include "critpot/phase.hpp"
#include "critpot/shooting.hpp"
#include "critpot/wkb.hpp"

namespace critpot {

/// Method requested by a caller; `automatic` defers to select_method.
struct MethodChoice {
    std::optional<Method> method;  ///< empty means automatic

    static MethodChoice parse(const std::string& name) {
        if (name == "auto") return {};
        return {method_from_string(name)};
    }
    std::string name() const { return method ? to_string(*method) : "auto"; }
};

/// Automatic rule: analytic when available; otherwise phase for l > 3 or
/// n + l > 10, shooting elsewhere.
inline Method select_method(const PotentialSpec& spec, int n, int l) {
    if (analytic_available(spec, l)) return Method::analytic;
    if (l > 3 || n + l > 10) return Method::phase;
    return Method::shoot;
}

inline CriticalResult solve(const PotentialSpec& spec, int n, int l, Method method, double tol = SolverDefaults::tol) {
    if (!(tol > 0.0 && tol < 1e-2)) throw Error(Errc::invalid_argument, "tolerance must lie in (0, 1e-2)");
    switch (method) {
    case Method::shoot: return critical_beta_shoot(spec, n, l, tol);
    case Method::phase: return critical_beta_phase(spec, n, l, tol);
    case Method::wkb1: return wkb1_beta(spec, n, l);
    case Method::wkb2: return wkb2_beta(spec, n, l, tol);
    case Method::analytic: return analytic_beta(spec, n, l);
    }
    throw Error(Errc::invalid_argument, "unknown method");
}

inline CriticalResult solve(const PotentialSpec& spec, int n, int l, MethodChoice choice,
                            double tol = SolverDefaults::tol) {
    return solve(spec, n, l, choice.method.value_or(select_method(spec, n, l)), tol);
}

/// Either a result or the error that prevented it.
struct Outcome {
    std::optional<CriticalResult> result;
    Errc error_code = Errc::non_convergence;
    std::string error_message;

    bool ok() const { return result.has_value(); }
};

template <class Fn>
Outcome capture(Fn&& fn) {
    Outcome out;
    try {
        out.result = fn();
    } catch (const Error& e) {
        out.error_code = e.code();
        out.error_message = e.what();
    }
    return out;
}

/// Worker count: CRITPOT_WORKERS if set to a positive integer, else the
/// hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("CRITPOT_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// Runs task(i) for i in [0, count) on `workers` threads. Each index is
/// processed exactly once; callers store results by index.
inline void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& task) {
    workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t i = next++; i < count; i = next++) task(i);
    };
    if (workers == 1) {
        run();
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
}

/// (n, l) grid request.
struct TableRequest {
    int n_max = 1;
    int l_max = 0;
    MethodChoice method;
    double tol = SolverDefaults::tol;
};

/// Grid of outcomes in row-major (n, l) order.
struct Table {
    int n_max = 0;
    int l_max = 0;
    std::vector<Outcome> cells;

    const Outcome& at(int n, int l) const { return cells[static_cast<std::size_t>((n - 1) * (l_max + 1) + l)]; }

    BetaGrid grid() const {
        BetaGrid g(n_max, l_max);
        for (int n = 1; n <= n_max; ++n)
            for (int l = 0; l <= l_max; ++l)
                if (at(n, l).ok()) g.set(n, l, at(n, l).result->beta);
        return g;
    }
};

inline Table fill_table(const PotentialSpec& spec, const TableRequest& req, unsigned workers = worker_count()) {
    if (req.n_max < 1) throw Error(Errc::invalid_argument, "table: n_max must be at least 1");
    if (req.l_max < 0) throw Error(Errc::invalid_argument, "table: l_max must be nonnegative");
    Table t;
    t.n_max = req.n_max;
    t.l_max = req.l_max;
    const std::size_t cols = static_cast<std::size_t>(req.l_max + 1);
    t.cells.resize(static_cast<std::size_t>(req.n_max) * cols);
    parallel_for(t.cells.size(), workers, [&](std::size_t i) {
        const int n = static_cast<int>(i / cols) + 1;
        const int l = static_cast<int>(i % cols);
        t.cells[i] = capture([&] { return solve(spec, n, l, req.method, req.tol); });
    });
    return t;
}

/// Methods that apply to (spec, l).
inline std::vector<Method> applicable_methods(const PotentialSpec& spec, int l) {
    std::vector<Method> out{Method::shoot, Method::phase};
    if (!spec.support_end) {
        out.push_back(Method::wkb1);
        if (l >= 1) out.push_back(Method::wkb2);
    }
    if (analytic_available(spec, l)) out.push_back(Method::analytic);
    return out;
}

struct Comparison {
    std::vector<std::pair<Method, Outcome>> runs;

    /// |a - b| / |b| for two successful runs.
    std::optional<double> relative_difference(Method a, Method b) const {
        const CriticalResult* ra = nullptr;
        const CriticalResult* rb = nullptr;
        for (const auto& [m, o] : runs) {
            if (!o.ok()) continue;
            if (m == a) ra = &*o.result;
            if (m == b) rb = &*o.result;
        }
        if (!ra || !rb) return std::nullopt;
        return std::abs(ra->beta - rb->beta) / std::abs(rb->beta);
    }
};

inline Comparison compare_methods(const PotentialSpec& spec, int n, int l, double tol = SolverDefaults::tol) {
    Comparison c;
    for (Method m : applicable_methods(spec, l)) {
        c.runs.emplace_back(m, capture([&] { return solve(spec, n, l, m, tol); }));
    }
    return c;
}

/// One sample of the functionals whose zeros / level crossings give beta_{n,l}.
struct CurvePoint {
    double beta = 0.0;
    double F = 0.0;          ///< l chi/R + chi' at R_end with chi ~ r^{l+1} at the origin
    double eta_end = 0.0;    ///< phase at R_end
    double R_end = 0.0;
    int bound_states = 0;
};

/// Evenly spaced samples of (beta, F, eta) on [beta_lo, beta_hi].
inline std::vector<CurvePoint> sample_curve(const PotentialSpec& spec, int l, double beta_lo, double beta_hi,
                                            int points, unsigned workers = worker_count()) {
    if (points < 2) throw Error(Errc::invalid_argument, "curve: need at least two points");
    if (!(beta_lo >= 0.0 && beta_hi > beta_lo)) throw Error(Errc::invalid_argument, "curve: need 0 <= lo < hi");
    std::vector<CurvePoint> out(static_cast<std::size_t>(points));
    parallel_for(out.size(), workers, [&](std::size_t i) {
        CurvePoint& p = out[i];
        p.beta = beta_lo + (beta_hi - beta_lo) * static_cast<double>(i) / (points - 1);
        if (p.beta == 0.0) {
            const double R = SolverDefaults::R_initial;
            p.F = (2.0 * l + 1.0) * std::pow(R, l);
            p.eta_end = delta_l(l);
            p.R_end = R;
            return;
        }
        const ShotResult shot = shoot({spec, p.beta, l}, 1e-12);
        p.F = shot.F_value * std::exp(shot.rescale_log);
        p.R_end = shot.R_end;
        p.bound_states = bound_states_from_shot(shot);
        p.eta_end = eta_infinity({spec, p.beta, l}, 1e-12).eta_end;
    });
    return out;
}

}  // namespace critpot
