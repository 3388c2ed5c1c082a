#pragma once

#include <stdexcept>
#include <string>

namespace critpot {

enum class Errc {
    domain,             ///< argument outside the mathematical domain (r <= 0, x < 0, ...)
    invalid_argument,   ///< malformed request or potential parameters
    unsupported,        ///< method not applicable to this potential / quantum numbers
    bracket_not_found,
    non_convergence,
    no_well,            ///< coupling below the classical threshold: U(r) >= 0 everywhere
    degenerate_well,    ///< turning points too close for the second-order correction
    step_underflow,
    missing_neighbor,
};

inline const char* to_string(Errc code) {
    switch (code) {
    case Errc::domain: return "domain";
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::unsupported: return "unsupported";
    case Errc::bracket_not_found: return "bracket_not_found";
    case Errc::non_convergence: return "non_convergence";
    case Errc::no_well: return "no_well";
    case Errc::degenerate_well: return "degenerate_well";
    case Errc::step_underflow: return "step_underflow";
    case Errc::missing_neighbor: return "missing_neighbor";
    }
    return "unknown";
}

/// True for errors caused by the request itself rather than by a solver.
inline bool is_request_error(Errc code) {
    return code == Errc::domain || code == Errc::invalid_argument || code == Errc::unsupported;
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace critpot
