#include "colombeau/schrodinger.hpp"

#include <Eigen/IterativeLinearSolvers>

#include <cmath>
#include <sstream>

#include "colombeau/errors.hpp"
#include "colombeau/norms.hpp"
#include "colombeau/spectral.hpp"

namespace colombeau {

namespace {

constexpr double kSolveTolerance = 1e-12;
constexpr double kMaxResidual = 1e-10;

Eigen::Index neighbor(const Grid& grid, Eigen::Index p, int axis) {
  const Eigen::Index m = grid.points_per_axis();
  const auto idx = grid.unravel(p);
  if (axis == 0) return grid.ravel((idx[0] + 1) % m, idx[1]);
  return grid.ravel(idx[0], (idx[1] + 1) % m);
}

struct SampledCoefficients {
  std::vector<Eigen::VectorXd> half;
  Eigen::VectorXd v;
};

SampledCoefficients sample_coefficients(const CoefficientNet& coeffs, double eps,
                                        const Grid& grid, double t) {
  SampledCoefficients s;
  for (int k = 0; k < grid.dim(); ++k) {
    const Eigen::VectorXd c = coeffs.axis(k).sample(grid, t, eps);
    const Eigen::Index worst = [&] {
      Eigen::Index i;
      c.minCoeff(&i);
      return i;
    }();
    if (c(worst) < coeffs.c0) {
      std::ostringstream msg;
      msg << "coefficient c_" << k << " = " << c(worst) << " at x=" << grid.point(worst)(0)
          << " (t=" << t << ", eps=" << eps << ") is below c0=" << coeffs.c0;
      throw PositivityError(msg.str());
    }
    Eigen::VectorXd h(grid.size());
    for (Eigen::Index p = 0; p < grid.size(); ++p) h(p) = 0.5 * (c(p) + c(neighbor(grid, p, k)));
    s.half.push_back(std::move(h));
  }
  s.v = coeffs.V.sample(grid, t, eps);
  return s;
}

SparseMatrix assemble(const SampledCoefficients& s, const Grid& grid) {
  const double inv_dx2 = 1.0 / (grid.spacing() * grid.spacing());
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(grid.size() * (1 + 4 * grid.dim()));
  for (int k = 0; k < grid.dim(); ++k) {
    for (Eigen::Index p = 0; p < grid.size(); ++p) {
      const Eigen::Index q = neighbor(grid, p, k);
      const double w = s.half[k](p) * inv_dx2;
      entries.emplace_back(p, p, -w);
      entries.emplace_back(q, q, -w);
      entries.emplace_back(p, q, w);
      entries.emplace_back(q, p, w);
    }
  }
  for (Eigen::Index p = 0; p < grid.size(); ++p) entries.emplace_back(p, p, s.v(p));
  SparseMatrix h(grid.size(), grid.size());
  h.setFromTriplets(entries.begin(), entries.end());
  return h;
}

using ComplexVector = Eigen::VectorXcd;

// Solves the periodic tridiagonal system
//   lower_i x_{i-1} + diag_i x_i + upper_i x_{i+1} = rhs_i  (indices mod M)
// by the Thomas algorithm plus a Sherman-Morrison correction.
ComplexVector solve_cyclic(const ComplexVector& lower, const ComplexVector& diag,
                           const ComplexVector& upper, const ComplexVector& rhs) {
  const Eigen::Index m = diag.size();
  const Complex alpha = upper(m - 1);  // row M-1, column 0
  const Complex beta = lower(0);       // row 0, column M-1
  const Complex gamma = -diag(0);
  ComplexVector d = diag;
  d(0) -= gamma;
  d(m - 1) -= alpha * beta / gamma;

  auto thomas = [&](const ComplexVector& r) {
    ComplexVector c_prime(m), x(m);
    Complex denom = d(0);
    c_prime(0) = upper(0) / denom;
    x(0) = r(0) / denom;
    for (Eigen::Index i = 1; i < m; ++i) {
      denom = d(i) - lower(i) * c_prime(i - 1);
      c_prime(i) = i < m - 1 ? upper(i) / denom : Complex(0);
      x(i) = (r(i) - lower(i) * x(i - 1)) / denom;
    }
    for (Eigen::Index i = m - 2; i >= 0; --i) x(i) -= c_prime(i) * x(i + 1);
    return x;
  };

  ComplexVector x = thomas(rhs);
  ComplexVector u = ComplexVector::Zero(m);
  u(0) = gamma;
  u(m - 1) = alpha;
  const ComplexVector z = thomas(u);
  const Complex factor = (x(0) + beta * x(m - 1) / gamma) / (Complex(1) + z(0) + beta * z(m - 1) / gamma);
  x -= factor * z;
  return x;
}

ComplexVector apply_cyclic(const ComplexVector& lower, const ComplexVector& diag,
                           const ComplexVector& upper, const ComplexVector& x) {
  const Eigen::Index m = diag.size();
  ComplexVector y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    y(i) = lower(i) * x((i + m - 1) % m) + diag(i) * x(i) + upper(i) * x((i + 1) % m);
  }
  return y;
}

}  // namespace

std::vector<Eigen::VectorXd> half_node_coefficients(const CoefficientNet& coeffs, double eps,
                                                    const Grid& grid, double t) {
  return sample_coefficients(coeffs, eps, grid, t).half;
}

SparseMatrix build_operator(const CoefficientNet& coeffs, double eps, const Grid& grid, double t) {
  return assemble(sample_coefficients(coeffs, eps, grid, t), grid);
}

Field::Values forward_difference(const Field::Values& u, const Grid& grid, int axis) {
  Field::Values d(u.size());
  for (Eigen::Index p = 0; p < u.size(); ++p) {
    d(p) = (u(neighbor(grid, p, axis)) - u(p)) / grid.spacing();
  }
  return d;
}

CoercivityReport coercivity_check(const CoefficientNet& coeffs, double eps, const Grid& grid,
                                  double t, const std::vector<Field>& probes) {
  const auto s = sample_coefficients(coeffs, eps, grid, t);
  const SparseMatrix h = assemble(s, grid);
  CoercivityReport report;
  report.lambda = coeffs.c0 + s.v.cwiseAbs().maxCoeff();
  report.passes = true;
  const double w = grid.cell_volume();
  for (const auto& phi : probes) {
    if (phi.grid() != grid) throw GridError("coercivity probe lives on a different grid");
    const auto& u = phi.values();
    const double l2sq = w * u.squaredNorm();
    if (l2sq == 0.0) throw PreconditionError("coercivity probes must be nonzero");
    double gradient = 0, flux = 0;
    for (int k = 0; k < grid.dim(); ++k) {
      const auto d = forward_difference(u, grid, k);
      gradient += w * d.squaredNorm();
      flux += w * s.half[k].dot(d.cwiseAbs2());
    }
    const double potential = w * s.v.dot(u.cwiseAbs2());
    CoercivityProbe probe;
    probe.form = flux + potential;
    probe.lhs = probe.form + report.lambda * l2sq;
    probe.rhs = coeffs.c0 * (l2sq + gradient);
    const Complex hu = w * u.dot(h.cast<Complex>() * u);
    probe.operator_gap =
        std::abs(probe.form - (-hu.real() + 2.0 * potential)) / std::max(1.0, std::abs(probe.form));
    probe.passes = probe.lhs >= probe.rhs * (1.0 - 1e-12);
    report.passes = report.passes && probe.passes;
    report.probes.push_back(probe);
  }
  return report;
}

std::vector<Field> random_probes(const Grid& grid, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Field> out;
  for (int k = 0; k < count; ++k) {
    Field::Values v(grid.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(normal(rng), normal(rng));
    out.emplace_back(grid, std::move(v));
  }
  return out;
}

struct CrankNicolsonStepper::Workspace {
  SampledCoefficients cached;
  bool has_cache = false;
  Eigen::SparseMatrix<Complex> lhs, rhs;
  Eigen::BiCGSTAB<Eigen::SparseMatrix<Complex>, Eigen::IncompleteLUT<Complex>> solver;
};

CrankNicolsonStepper::CrankNicolsonStepper(CoefficientNet coeffs, double eps, Grid grid, double dt,
                                           Forcing forcing)
    : coeffs_(std::move(coeffs)),
      eps_(eps),
      grid_(std::move(grid)),
      dt_(dt),
      forcing_(std::move(forcing)),
      work_(std::make_unique<Workspace>()) {
  if (!(dt > 0)) throw PreconditionError("time step must be positive");
}

CrankNicolsonStepper::~CrankNicolsonStepper() = default;
CrankNicolsonStepper::CrankNicolsonStepper(CrankNicolsonStepper&&) noexcept = default;

void CrankNicolsonStepper::step(Field::Values& u, double t) {
  const double t_half = t + 0.5 * dt_;
  const Complex half_step(0.0, 0.5 * dt_);
  ComplexVector forcing_term;
  if (forcing_) forcing_term = dt_ * forcing_(t_half);

  if (grid_.dim() == 1) {
    const auto s = sample_coefficients(coeffs_, eps_, grid_, t_half);
    const Eigen::Index m = grid_.size();
    const double inv_dx2 = 1.0 / (grid_.spacing() * grid_.spacing());
    ComplexVector lower(m), diag(m), upper(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double left = s.half[0]((i + m - 1) % m) * inv_dx2;
      const double right = s.half[0](i) * inv_dx2;
      lower(i) = left;
      upper(i) = right;
      diag(i) = -(left + right) + s.v(i);
    }
    // I + i dt/2 H on the right, I - i dt/2 H on the left.
    ComplexVector rhs = u + half_step * apply_cyclic(lower, diag, upper, u);
    if (forcing_) rhs += forcing_term;
    const ComplexVector l_lower = -half_step * lower, l_upper = -half_step * upper;
    const ComplexVector l_diag = ComplexVector::Ones(m) - half_step * diag;
    u = solve_cyclic(l_lower, l_diag, l_upper, rhs);
    const double residual =
        (apply_cyclic(l_lower, l_diag, l_upper, u) - rhs).norm() / std::max(rhs.norm(), 1e-300);
    stats_.max_residual = std::max(stats_.max_residual, residual);
    ++stats_.steps;
    if (residual > kMaxResidual) {
      throw SolverError("cyclic tridiagonal solve lost accuracy", 0, residual);
    }
    return;
  }

  auto s = sample_coefficients(coeffs_, eps_, grid_, t_half);
  Workspace& w = *work_;
  bool same = w.has_cache && s.v == w.cached.v;
  for (std::size_t k = 0; same && k < s.half.size(); ++k) same = s.half[k] == w.cached.half[k];
  if (!same) {
    const Eigen::SparseMatrix<Complex> h = assemble(s, grid_).cast<Complex>();
    Eigen::SparseMatrix<Complex> id(grid_.size(), grid_.size());
    id.setIdentity();
    w.lhs = id - half_step * h;
    w.rhs = id + half_step * h;
    w.solver.setTolerance(kSolveTolerance);
    w.solver.setMaxIterations(2000);
    w.solver.compute(w.lhs);
    w.cached = std::move(s);
    w.has_cache = true;
  }
  ComplexVector rhs = w.rhs * u;
  if (forcing_) rhs += forcing_term;
  ComplexVector next = w.solver.solveWithGuess(rhs, u);
  const double residual = (w.lhs * next - rhs).norm() / std::max(rhs.norm(), 1e-300);
  stats_.linear_iterations += w.solver.iterations();
  stats_.max_residual = std::max(stats_.max_residual, residual);
  ++stats_.steps;
  if (w.solver.info() != Eigen::Success || residual > kMaxResidual) {
    throw SolverError("BiCGSTAB did not converge", w.solver.iterations(), residual);
  }
  u = std::move(next);
}

Grid GridPolicy::for_eps(double eps) const {
  if (points > 0) return Grid(dim, half_width, points);
  if (spacing_per_eps > 0) {
    return Grid(dim, half_width,
                std::max(min_points, points_for_spacing(half_width, eps * spacing_per_eps)));
  }
  throw PreconditionError("grid policy needs either a fixed point count or a spacing rule");
}

double SolveResult::sup_h1() const {
  double m = 0;
  for (const auto& row : history) m = std::max(m, row.h1);
  return m;
}

int resolve_time_steps(const CauchyProblem& problem, const Grid& grid) {
  if (!(problem.T > 0)) throw PreconditionError("final time T must be positive");
  const double dx = grid.spacing();
  if (problem.time_steps > 0) {
    if (problem.T / problem.time_steps > dx * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "time step " << problem.T / problem.time_steps << " exceeds grid spacing " << dx
          << "; use at least " << static_cast<long>(std::ceil(problem.T / dx)) << " steps";
      throw PreconditionError(msg.str());
    }
    return problem.time_steps;
  }
  return static_cast<int>(std::ceil(problem.T / dx - 1e-9));
}

SolveResult solve(const CauchyProblem& problem, double eps) {
  const Grid grid = problem.grid.for_eps(eps);
  const int steps = resolve_time_steps(problem, grid);
  SolveResult result;
  result.eps = eps;
  result.dt = problem.T / steps;
  Forcing forcing = problem.forcing ? problem.forcing(eps, grid) : Forcing{};
  CrankNicolsonStepper stepper(problem.coeffs, eps, grid, result.dt, forcing);

  std::vector<int> snapshot_steps;
  for (double t : problem.snapshot_times) {
    if (t < 0 || t > problem.T * (1 + 1e-12)) throw PreconditionError("snapshot time outside [0, T]");
    snapshot_steps.push_back(static_cast<int>(std::lround(t / result.dt)));
  }
  const int stride = std::max(1, problem.history_stride);

  Field::Values u = problem.initial(eps, grid).values();
  SpectralTransform<double> fft(grid);
  auto record = [&](int m) {
    const auto n = sobolev_norms(Field(grid, u), fft);
    result.history.push_back({m * result.dt, n.l2, n.h1, n.h2});
  };
  auto keep = [&](int m) {
    for (int s : snapshot_steps) {
      if (s == m) {
        result.snapshots.emplace_back(m * result.dt, Field(grid, u));
        break;
      }
    }
  };
  record(0);
  keep(0);
  double norm = u.norm();
  for (int m = 0; m < steps; ++m) {
    stepper.step(u, m * result.dt);
    const double next = u.norm();
    if (norm > 0) result.max_step_drift = std::max(result.max_step_drift, std::abs(next - norm) / norm);
    norm = next;
    if ((m + 1) % stride == 0 || m + 1 == steps) record(m + 1);
    if (m + 1 < steps) keep(m + 1);
  }
  result.snapshots.emplace_back(steps * result.dt, Field(grid, u));
  result.stats = stepper.stats();
  return result;
}

EnergyReport energy_audit(const SolveResult& result, const CauchyProblem& problem, double eps,
                          double kappa) {
  const Grid& grid = result.final_state().grid();
  const auto times = sample_times(problem.T, 33);
  EnergyReport r;
  r.eps = eps;
  r.kappa = kappa;
  for (const auto& row : result.history) r.lhs = std::max(r.lhs, row.h1 * row.h1);
  const auto& c = problem.coeffs;
  r.c1 = problem.T / c.c0 * (c.dt_c_sup(grid, eps, times) + c.dt_v_sup(grid, eps, times));
  r.c2 = problem.T * (c.c0 + c.v_sup(grid, eps, times));
  r.data = result.history.front().h1 * result.history.front().h1;
  if (problem.forcing) {
    const Forcing f = problem.forcing(eps, grid);
    constexpr double h = 1e-5;
    std::vector<double> integrand;
    for (double t : times) {
      const Field ft(grid, f(t));
      const Field dft(grid, (f(t + h) - f(t - h)) / (2 * h));
      const double a = norm_l2(ft), b = norm_hminus1(dft);
      integrand.push_back(a * a + b * b);
    }
    const double dt = problem.T / (times.size() - 1);
    for (std::size_t i = 0; i + 1 < integrand.size(); ++i) {
      r.data += 0.5 * dt * (integrand[i] + integrand[i + 1]);
    }
  }
  r.rhs = kappa * r.c2 * std::exp(r.c1) * r.data;
  r.ratio = r.rhs > 0 ? r.lhs / r.rhs : (r.lhs == 0 ? 0.0 : std::numeric_limits<double>::infinity());
  return r;
}

UniquenessReport uniqueness_probe(const CauchyProblem& problem, const EpsGrid& eps, int q,
                                  const std::function<Field(const Grid&)>& perturbation,
                                  double tolerance) {
  UniquenessReport report;
  report.q = q;
  report.tolerance = tolerance;
  std::vector<double> diffs, growths, inv_eps;
  for (double e : eps) {
    const Grid grid = problem.grid.for_eps(e);
    const int steps = resolve_time_steps(problem, grid);
    const double dt = problem.T / steps;
    const Forcing forcing = problem.forcing ? problem.forcing(e, grid) : Forcing{};
    CrankNicolsonStepper a(problem.coeffs, e, grid, dt, forcing);
    CrankNicolsonStepper b(problem.coeffs, e, grid, dt, forcing);
    Field::Values u = problem.initial(e, grid).values();
    Field::Values v = u + std::pow(e, q) * perturbation(grid).values();
    const double w = grid.cell_volume();
    const double g_norm = std::sqrt(w * u.squaredNorm());
    double previous = w * (u - v).squaredNorm();
    double integral = 0, sup_norm = g_norm;
    for (int m = 0; m < steps; ++m) {
      a.step(u, m * dt);
      b.step(v, m * dt);
      const double current = w * (u - v).squaredNorm();
      integral += 0.5 * dt * (previous + current);
      previous = current;
      sup_norm = std::max(sup_norm, std::sqrt(w * u.squaredNorm()));
    }
    UniquenessRow row{e, std::sqrt(integral), g_norm > 0 ? sup_norm / g_norm : 1.0};
    report.rows.push_back(row);
    diffs.push_back(row.difference);
    growths.push_back(row.growth);
    inv_eps.push_back(1.0 / e);
  }
  report.growth_order = std::max(0.0, fit_log_log(inv_eps, growths).slope);
  bool all_zero = true;
  for (double d : diffs) all_zero = all_zero && d == 0.0;
  if (q < 2) {
    report.slope = eps_rate(eps, diffs).slope;
    report.passes = false;
    report.reason = "perturbation order q=" + std::to_string(q) + " is below 2; not negligible";
    return report;
  }
  if (all_zero) {
    report.passes = true;
    report.reason = "solution difference vanishes identically";
    return report;
  }
  report.slope = eps_rate(eps, diffs).slope;
  const double needed = q - report.growth_order - tolerance;
  report.passes = report.slope >= needed;
  std::ostringstream os;
  os << "difference slope " << report.slope << (report.passes ? " >= " : " < ") << needed
     << " (q - N - tol)";
  report.reason = os.str();
  return report;
}

}  // namespace colombeau
