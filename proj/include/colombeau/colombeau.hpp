#pragma once

#include "colombeau/asymptotics.hpp"
#include "colombeau/coefficients.hpp"
#include "colombeau/convergence_lab.hpp"
#include "colombeau/eps_net.hpp"
#include "colombeau/errors.hpp"
#include "colombeau/free_propagator.hpp"
#include "colombeau/grid.hpp"
#include "colombeau/grid_function.hpp"
#include "colombeau/key_value.hpp"
#include "colombeau/measure.hpp"
#include "colombeau/measure_sqrt.hpp"
#include "colombeau/mollifier.hpp"
#include "colombeau/net_io.hpp"
#include "colombeau/norms.hpp"
#include "colombeau/schrodinger.hpp"
#include "colombeau/spectral.hpp"
#include "colombeau/test_function.hpp"
