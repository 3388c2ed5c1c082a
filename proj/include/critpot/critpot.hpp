#pragma once

// Core library. JSON configuration and report formatting live under
// critpot/io/ and additionally need nlohmann_json.

#include "critpot/analytic.hpp"
#include "critpot/asymptotics.hpp"
#include "critpot/critical.hpp"
#include "critpot/error.hpp"
#include "critpot/origin_series.hpp"
#include "critpot/phase.hpp"
#include "critpot/potential.hpp"
#include "critpot/shooting.hpp"
#include "critpot/solve.hpp"
#include "critpot/specfun/bessel.hpp"
#include "critpot/specfun/ode.hpp"
#include "critpot/specfun/quadrature.hpp"
#include "critpot/specfun/roots.hpp"
#include "critpot/wkb.hpp"
