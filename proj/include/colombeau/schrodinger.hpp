#pragma once

#include <Eigen/Sparse>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "colombeau/asymptotics.hpp"
#include "colombeau/coefficients.hpp"
#include "colombeau/eps_net.hpp"
#include "colombeau/grid_function.hpp"

namespace colombeau {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Flux-form discretization of sum_k d_k(c_k d_k u) + V u at time t:
/// forward difference, multiply by c_k at half nodes (mean of the two
/// adjacent nodes), backward difference, plus diagonal V. Periodic wrap.
/// The result is real symmetric. Throws PositivityError when some c_k
/// node value falls below c0.
SparseMatrix build_operator(const CoefficientNet& coeffs, double eps, const Grid& grid, double t);

/// c_k at the half nodes x + dx e_k / 2, one vector per axis.
std::vector<Eigen::VectorXd> half_node_coefficients(const CoefficientNet& coeffs, double eps,
                                                    const Grid& grid, double t);

/// Forward difference along an axis with periodic wrap.
Field::Values forward_difference(const Field::Values& u, const Grid& grid, int axis);

struct CoercivityProbe {
  double form = 0;         // a(t; phi, phi)
  double lhs = 0;          // a + lambda ||phi||^2
  double rhs = 0;          // c0 ||phi||_{H^1}^2 (discrete forward-difference H^1)
  double operator_gap = 0; // |a + <(A + V) phi, phi> - 2 <V phi, phi>| / scale
  bool passes = false;
};

struct CoercivityReport {
  double lambda = 0;  // c0 + sup |V|
  std::vector<CoercivityProbe> probes;
  bool passes = false;
};

CoercivityReport coercivity_check(const CoefficientNet& coeffs, double eps, const Grid& grid,
                                  double t, const std::vector<Field>& probes);

/// Random complex probes with seeded normal node values.
std::vector<Field> random_probes(const Grid& grid, int count, std::uint64_t seed);

/// Forcing at grid level: node values of f_eps(., t). Empty means f = 0.
using Forcing = std::function<Field::Values(double t)>;

struct SolverStats {
  long steps = 0;
  long linear_iterations = 0;
  double max_residual = 0;  // relative residual of the worst linear solve
};

/// Crank-Nicolson propagator for du/dt = i (A + V)(t) u + f(t):
/// (I - i dt/2 H) u^{m+1} = (I + i dt/2 H) u^m + dt f(t_{m+1/2}),
/// with H evaluated at t_{m+1/2}. One-dimensional systems use a direct
/// cyclic tridiagonal solve; two-dimensional systems use BiCGSTAB with an
/// incomplete LU preconditioner. Not thread-safe; one stepper per solve.
class CrankNicolsonStepper {
 public:
  CrankNicolsonStepper(CoefficientNet coeffs, double eps, Grid grid, double dt,
                       Forcing forcing = {});
  ~CrankNicolsonStepper();
  CrankNicolsonStepper(CrankNicolsonStepper&&) noexcept;

  double dt() const { return dt_; }
  /// Advances u from t to t + dt in place.
  void step(Field::Values& u, double t);
  const SolverStats& stats() const { return stats_; }

 private:
  struct Workspace;
  CoefficientNet coeffs_;
  double eps_;
  Grid grid_;
  double dt_;
  Forcing forcing_;
  SolverStats stats_;
  std::unique_ptr<Workspace> work_;
};

/// Grid selection per eps: a fixed grid, or dx <= eps * spacing_per_eps on
/// the box [-L, L)^n.
struct GridPolicy {
  int dim = 1;
  double half_width = 8.0;
  Eigen::Index points = 0;     // fixed M when > 0
  double spacing_per_eps = 0;  // dx <= eps * spacing_per_eps when > 0
  Eigen::Index min_points = 8;

  Grid for_eps(double eps) const;
};

/// Cauchy problem family indexed by eps.
struct CauchyProblem {
  CoefficientNet coeffs;
  std::function<Field(double eps, const Grid& grid)> initial;
  std::function<Forcing(double eps, const Grid& grid)> forcing;  // empty: f = 0
  double T = 1.0;
  int time_steps = 0;  // 0: smallest count with dt <= dx
  GridPolicy grid;
  std::vector<double> snapshot_times;  // final time is always kept
  int history_stride = 1;              // norm history every k steps
};

struct NormRow {
  double t = 0;
  double l2 = 0;
  double h1 = 0;
  double h2 = 0;
};

struct SolveResult {
  double eps = 0;
  double dt = 0;
  std::vector<std::pair<double, Field>> snapshots;
  std::vector<NormRow> history;
  SolverStats stats;
  double max_step_drift = 0;  // max over steps of |‖u^{m+1}‖ - ‖u^m‖| / ‖u^m‖

  const Field& final_state() const { return snapshots.back().second; }
  double sup_h1() const;
};

/// Time step count for a problem on a grid: problem.time_steps, or the
/// smallest count with dt <= dx. Throws PreconditionError if an explicit
/// count violates dt <= dx.
int resolve_time_steps(const CauchyProblem& problem, const Grid& grid);

SolveResult solve(const CauchyProblem& problem, double eps);

struct EnergyReport {
  double eps = 0;
  double lhs = 0;   // sup_t ‖u(t)‖_{H^1}^2
  double c1 = 0;    // (T / c0) (max_k ‖d_t c_k‖_inf + ‖d_t V‖_inf)
  double c2 = 0;    // T (c0 + ‖V‖_inf)
  double data = 0;  // ‖g‖_{H^1}^2 + int_0^T (‖f‖^2 + ‖d_t f‖_{H^-1}^2)
  double kappa = 1;
  double rhs = 0;   // kappa c2 e^{c1} data
  double ratio = 0; // lhs / rhs
};

/// Realizes the energy bound with explicit constant kappa; reports the
/// ratio instead of asserting the unknown absolute constant.
EnergyReport energy_audit(const SolveResult& result, const CauchyProblem& problem, double eps,
                          double kappa = 1.0);

struct UniquenessRow {
  double eps = 0;
  double difference = 0;  // ‖u - u~‖ in L2(grid x [0, T])
  double growth = 0;      // sup_t ‖u(t)‖ / ‖g‖
};

struct UniquenessReport {
  int q = 0;
  std::vector<UniquenessRow> rows;
  double slope = 0;           // eps-rate of the difference
  double growth_order = 0;    // N: measured power of 1/eps in the growth, clamped at 0
  double tolerance = 0.5;
  bool passes = false;
  std::string reason;
};

/// Solves with g_eps and with g_eps + eps^q w in lockstep and fits the
/// rate of the difference. Passes iff q >= 2 and slope >= q - N - tol.
UniquenessReport uniqueness_probe(const CauchyProblem& problem, const EpsGrid& eps, int q,
                                  const std::function<Field(const Grid&)>& perturbation,
                                  double tolerance = 0.5);

}  // namespace colombeau
