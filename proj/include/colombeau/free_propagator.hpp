#pragma once

#include <string>
#include <vector>

#include "colombeau/asymptotics.hpp"
#include "colombeau/eps_net.hpp"
#include "colombeau/grid_function.hpp"
#include "colombeau/mollifier.hpp"
#include "colombeau/spectral.hpp"
#include "colombeau/test_function.hpp"

namespace colombeau {

/// exp(it Laplacian) on the periodic box: the spectrum is multiplied by
/// e^{-it|xi|^2}. The transform of the initial state is cached so one
/// state can be evolved to many times with one inverse FFT each.
class FreePropagator {
 public:
  explicit FreePropagator(const Field& u0);

  const Grid& grid() const { return grid_; }
  Field evolve(double t);
  /// Fraction of the spectral mass with 2 t |xi| > L, i.e. moving fast
  /// enough to wrap around the periodic box by time t.
  double wrap_fraction(double t) const;

 private:
  Grid grid_;
  SpectralTransform<double> fft_;
  Field::Values spectrum_;
};

Field free_evolve(const Field& u0, double t);

/// Density |u_eps(t, .)|^2 of the measure mu_eps^t and its total mass.
struct ProbabilityDensitySnapshot {
  double t = 0;
  double eps = 0;
  Field density;
  double mass = 0;
};

ProbabilityDensitySnapshot density_snapshot(const Field& u, double t, double eps);

struct MassReport {
  double mass = 0;
  double error = 0;
  bool passes = false;
};

MassReport mass_check(const ProbabilityDensitySnapshot& snapshot, double tol = 1e-8);

/// ‖sqrt(rho_eps)‖_{L1} = eps^{n/2} ‖sqrt(rho)‖_{L1}.
double sqrt_mollifier_l1(const Mollifier& rho, double eps);
/// The same quantity by direct radial quadrature of sqrt(rho_eps).
double sqrt_mollifier_l1_quadrature(const Mollifier& rho, double eps);

struct DispersiveReport {
  double eps = 0;
  double t = 0;
  double sup_norm = 0;
  double bound = 0;  // ‖sqrt(rho_eps)‖_{L1} / (4 pi |t|)^{n/2}
  double ratio = 0;
  bool passes = false;
};

/// `u` is the evolved state u_eps(t, .). Throws PreconditionError at t = 0.
DispersiveReport dispersive_bound_check(const Field& u, double eps, double t, const Mollifier& rho);

/// sqrt(rho_eps) sampled on the grid: the square root of the Dirac measure.
Field sqrt_dirac_data(const Mollifier& rho, double eps, const Grid& grid);

/// Box sizing for the free example at scale eps:
/// L = max(spread t_max / eps, tail_radius(tail_tol) eps, min_width eps),
/// dx <= eps / 8, M a power of two.
struct FreeBoxPolicy {
  double spread = 12.0;
  double tail_tol = 1e-10;
  double min_width = 0.0;

  Grid grid_for(const Mollifier& rho, double eps, double t_max) const;
};

struct FreeExamplePoint {
  double eps = 0;
  double t = 0;
  double mass = 0;
  double sup_norm = 0;
  double bound = 0;
  double wrap_fraction = 0;
  double total_pairing = 0;          // <mu_eps^t, 1>, the full-box sum
  std::vector<double> pairings;      // <mu_eps^t, psi> per test function
};

struct FreeRate {
  double t = 0;
  std::string test;
  double rate = 0;
  bool passes = false;
};

struct FreeExampleReport {
  int dim = 1;
  std::vector<std::string> tests;
  std::vector<FreeExamplePoint> points;
  std::vector<FreeRate> rates;
  double sqrt_l1_rate = 0;  // eps-slope of ‖sqrt(rho_eps)‖_{L1} by quadrature
  bool mass_ok = false;
  bool total_ok = false;
  bool dispersive_ok = false;
  bool rates_ok = false;
  bool wrap_ok = false;
  bool passes = false;
};

struct FreeExampleThresholds {
  double mass_tol = 1e-8;
  double rate_slack = 0.1;  // rate >= n/2 - slack
  double wrap_tol = 1e-4;
};

/// Evolves sqrt(rho_eps) for every eps and t and checks the mass law, the
/// dispersive bound, wrap-around, and the eps^{n/2} decay of the pairings.
/// Times equal to zero are recorded but excluded from the decay and
/// dispersive checks.
FreeExampleReport free_example(const Mollifier& rho, const EpsGrid& eps,
                               const std::vector<double>& times,
                               const std::vector<TestFunctionSpec>& tests,
                               const FreeBoxPolicy& box = {},
                               const FreeExampleThresholds& th = {});

/// Vague convergence at a fixed t != 0 (pairing decay plus <mu, 1> = 1).
FreeExampleReport vague_convergence_check(const Mollifier& rho, double t,
                                          const std::vector<TestFunctionSpec>& tests,
                                          const EpsGrid& eps, const FreeBoxPolicy& box = {});

struct CrossValidation {
  double error = 0;  // ‖CN - spectral‖_{L2}
  double reference_norm = 0;
};

/// Runs `steps` Crank-Nicolson steps with c = 1, V = 0, f = 0 up to time t
/// and compares with the spectral propagator.
CrossValidation cross_validate_cn(const Field& u0, double t, int steps);

struct OrderStudy {
  std::vector<Eigen::Index> points;
  std::vector<int> steps;
  std::vector<double> errors;
  std::vector<double> orders;  // log2(e_k / e_{k+1})
  double min_order = 0;
};

/// Halves dx and dt together `levels - 1` times starting from (M, steps).
OrderStudy cn_order_study(const std::function<Complex(const Point&)>& u0, int dim,
                          double half_width, Eigen::Index points, int steps, double t,
                          int levels = 3);

}  // namespace colombeau
