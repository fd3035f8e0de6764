#pragma once

#include <functional>

#include "colombeau/convergence_lab.hpp"
#include "colombeau/mollifier.hpp"
#include "config.hpp"

namespace colombeau::app {

/// The unregularized profile of smooth data; empty for dirac / sqrt_dirac.
InitialData profile(const DataSpec& data);

/// g_eps on a grid: rho_eps for dirac, sqrt(rho_eps) for sqrt_dirac, and the
/// mollified profile otherwise.
std::function<Field(double, const Grid&)> initial_net(const DataSpec& data, const Mollifier& rho);

/// exp(-|x|^2) cos t.
ForcingData pulse_forcing();

CoefficientNet coefficient_net(const Config& cfg);

GridPolicy grid_policy(const Config& cfg);

}  // namespace colombeau::app
