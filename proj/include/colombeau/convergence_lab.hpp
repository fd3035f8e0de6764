#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "colombeau/eps_net.hpp"
#include "colombeau/mollifier.hpp"
#include "colombeau/schrodinger.hpp"
#include "colombeau/test_function.hpp"

namespace colombeau {

using InitialData = std::function<Complex(const Point&)>;
using ForcingData = std::function<Complex(const Point&, double t)>;

/// Mollifies node values by periodic FFT convolution with rho_eps.
Field mollify_field(const Field& u, const Mollifier& rho, double eps);

struct CoherenceSetup {
  InitialData g0;
  ForcingData f0;  // empty: no forcing
  CoefficientNet coeffs;  // eps-independent, smooth
  Mollifier rho = Mollifier::cauchy_power(1, 4.0);
  EpsGrid eps = EpsGrid::dyadic(1, 6);
  double T = 0.5;
  Grid grid = Grid(1, 8.0, 1 << 13);
  int time_steps = 0;   // 0: dt <= dx
  int snapshots = 11;   // comparison times, evenly spaced including 0 and T
  double tol = 1e-3;    // final sup-t H^1 difference
  double min_rate = 0.9;
  bool check_reference = true;
};

struct CoherenceRow {
  double eps = 0;
  double sup_h1_diff = 0;
  double data_diff = 0;     // data-difference norm of the energy estimate
  double energy_ratio = 0;  // sup_h1_diff / (sqrt(c2 e^{c1}) data_diff)
  std::vector<double> h1_diff;  // per comparison time
};

struct CoherenceReport {
  std::vector<double> times;
  std::vector<CoherenceRow> rows;
  double reference_self_diff = 0;  // (M, N_t) vs (2M, 2N_t), sup-t H^1
  bool reference_ok = false;
  double rate = 0;
  bool monotone = false;
  bool rate_ok = false;
  double final_diff = 0;
  bool final_ok = false;
  double c1 = 0;
  double c2 = 0;
  bool passes = false;
};

/// Compares the solutions with mollified data against a resolution-checked
/// reference w solved with the unregularized data on the same grid.
/// Throws Error when the reference fails its self-convergence check.
CoherenceReport coherence_experiment(const CoherenceSetup& setup);

struct PairingSeries {
  std::string test;
  double t = 0;
  std::vector<Complex> values;  // one per eps
  double contraction = 0;       // mean factor by which successive differences shrink
  bool cauchy = false;
  Complex limit;                // geometric extrapolation
  std::optional<Complex> oracle;
  double oracle_gap = 0;
  double decay_rate = 0;        // eps-rate of |values|
};

struct SolutionAssociationReport {
  std::vector<PairingSeries> series;
  std::vector<std::vector<double>> masses;  // [eps][time] of |u_eps(t)|^2
  bool all_cauchy = false;
  std::string verdict;
};

enum class PairingQuantity { solution, density };

struct AssociationSetup {
  CauchyProblem problem;  // problem.snapshot_times are the pairing times
  std::vector<TestFunctionSpec> tests;
  EpsGrid eps = EpsGrid::dyadic(2, 7);
  PairingQuantity quantity = PairingQuantity::solution;
  double min_contraction = 1.5;
  /// Optional closed-form or spectral limit <w(t), psi>.
  std::function<Complex(const TestFunctionSpec&, double t)> oracle;
};

SolutionAssociationReport association_of_solution(const AssociationSetup& setup);

}  // namespace colombeau
