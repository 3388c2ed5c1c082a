#pragma once

#include <map>
#include <string>

#include "critpot/error.hpp"

namespace critpot {

enum class Method { shoot, phase, wkb1, wkb2, analytic };

inline const char* to_string(Method m) {
    switch (m) {
    case Method::shoot: return "shoot";
    case Method::phase: return "phase";
    case Method::wkb1: return "wkb1";
    case Method::wkb2: return "wkb2";
    case Method::analytic: return "analytic";
    }
    return "unknown";
}

inline Method method_from_string(const std::string& name) {
    if (name == "shoot") return Method::shoot;
    if (name == "phase") return Method::phase;
    if (name == "wkb1") return Method::wkb1;
    if (name == "wkb2") return Method::wkb2;
    if (name == "analytic") return Method::analytic;
    throw Error(Errc::invalid_argument, "unknown method '" + name + "'");
}

/// Critical coupling beta_{n,l} at which the n-th bound state of angular
/// momentum l sits exactly at zero energy.
struct CriticalResult {
    int n = 0;
    int l = 0;
    double beta = 0.0;
    Method method = Method::shoot;
    double error_estimate = 0.0;  ///< half-width of the final bracket (0 for closed forms)
    std::map<std::string, double> diagnostics;
};

/// Defaults shared by the exact solvers.
struct SolverDefaults {
    static constexpr double tol = 1e-10;         ///< relative bracket width for beta
    static constexpr double tail_eps = 1e-14;    ///< neglected-tail criterion at R_end
    static constexpr double R_initial = 20.0;
    static constexpr double R_max = 1e4;
    static constexpr int series_order = 12;
    static constexpr double renorm_threshold = 1e100;

    /// ODE tolerance paired with a beta tolerance.
    static double ode_tol(double beta_tol) {
        const double t = beta_tol * 1e-2;
        return t < 1e-14 ? 1e-14 : (t > 1e-6 ? 1e-6 : t);
    }
};

}  // namespace critpot
