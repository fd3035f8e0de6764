#include "colombeau/free_propagator.hpp"

#include <cmath>
#include <numbers>

#include "colombeau/errors.hpp"
#include "colombeau/norms.hpp"
#include "colombeau/schrodinger.hpp"

namespace colombeau {

FreePropagator::FreePropagator(const Field& u0)
    : grid_(u0.grid()), fft_(u0.grid()), spectrum_(fft_.forward(u0.values())) {}

Field FreePropagator::evolve(double t) {
  Field::Values spec = spectrum_;
  fft_.for_each_mode([&](Eigen::Index k, double x0, double x1, bool, bool) {
    spec(k) *= std::polar(1.0, -t * (x0 * x0 + x1 * x1));
  });
  return Field(grid_, fft_.inverse(spec));
}

double FreePropagator::wrap_fraction(double t) const {
  double total = 0, fast = 0;
  const double reach = grid_.half_width();
  fft_.for_each_mode([&](Eigen::Index k, double x0, double x1, bool, bool) {
    const double p = std::norm(spectrum_(k));
    total += p;
    if (2.0 * std::abs(t) * std::hypot(x0, x1) > reach) fast += p;
  });
  return total > 0 ? fast / total : 0.0;
}

Field free_evolve(const Field& u0, double t) { return FreePropagator(u0).evolve(t); }

ProbabilityDensitySnapshot density_snapshot(const Field& u, double t, double eps) {
  Field density = Field::from_real(u.grid(), u.modulus_squared());
  const double m = mass(u);
  return {t, eps, std::move(density), m};
}

MassReport mass_check(const ProbabilityDensitySnapshot& snapshot, double tol) {
  MassReport r;
  r.mass = snapshot.mass;
  r.error = std::abs(snapshot.mass - 1.0);
  r.passes = r.error <= tol;
  return r;
}

double sqrt_mollifier_l1(const Mollifier& rho, double eps) {
  return std::pow(eps, 0.5 * rho.dim()) * rho.sqrt_l1_norm();
}

double sqrt_mollifier_l1_quadrature(const Mollifier& rho, double eps) {
  return radial_integral([&](double r) { return std::sqrt(rho.scaled(r, eps)); }, rho.dim());
}

DispersiveReport dispersive_bound_check(const Field& u, double eps, double t, const Mollifier& rho) {
  if (t == 0.0) throw PreconditionError("the dispersive bound is vacuous at t = 0");
  if (!rho.sqrt_integrable()) throw PreconditionError("dispersive bound needs sqrt(rho) in L1");
  DispersiveReport r;
  r.eps = eps;
  r.t = t;
  r.sup_norm = norm_linf(u);
  r.bound = sqrt_mollifier_l1(rho, eps) / std::pow(4.0 * std::numbers::pi * std::abs(t), 0.5 * u.grid().dim());
  r.ratio = r.sup_norm / r.bound;
  r.passes = r.sup_norm <= r.bound;
  return r;
}

Field sqrt_dirac_data(const Mollifier& rho, double eps, const Grid& grid) {
  if (rho.dim() != grid.dim()) throw GridError("mollifier and grid dimensions differ");
  require_resolution(grid, eps);
  Eigen::VectorXd v(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) v(i) = std::sqrt(rho.scaled(grid.point(i).norm(), eps));
  return Field::from_real(grid, v);
}

Grid FreeBoxPolicy::grid_for(const Mollifier& rho, double eps, double t_max) const {
  double half_width = std::max(spread * t_max / eps, min_width * eps);
  if (tail_tol > 0) half_width = std::max(half_width, rho.tail_radius(tail_tol) * eps);
  return Grid(rho.dim(), half_width, points_for_spacing(half_width, eps / kPointsPerEps));
}

FreeExampleReport free_example(const Mollifier& rho, const EpsGrid& eps,
                               const std::vector<double>& times,
                               const std::vector<TestFunctionSpec>& tests,
                               const FreeBoxPolicy& box, const FreeExampleThresholds& th) {
  if (times.empty()) throw PreconditionError("free example needs at least one time");
  FreeExampleReport report;
  report.dim = rho.dim();
  for (const auto& s : tests) report.tests.push_back(s.descriptor());
  double t_max = 0;
  for (double t : times) t_max = std::max(t_max, std::abs(t));

  report.mass_ok = report.total_ok = report.dispersive_ok = report.wrap_ok = true;
  std::vector<double> sqrt_l1;
  for (double e : eps) {
    const Grid grid = box.grid_for(rho, e, t_max);
    const Field u0 = sqrt_dirac_data(rho, e, grid);
    FreePropagator propagator(u0);
    std::vector<TestFunction> psis;
    for (const auto& s : tests) psis.emplace_back(grid, s);
    for (double t : times) {
      const Field u = t == 0.0 ? u0 : propagator.evolve(t);
      const auto snap = density_snapshot(u, t, e);
      FreeExamplePoint p;
      p.eps = e;
      p.t = t;
      p.mass = snap.mass;
      p.total_pairing = integral(snap.density).real();
      p.sup_norm = norm_linf(u);
      p.wrap_fraction = propagator.wrap_fraction(t);
      for (const auto& psi : psis) p.pairings.push_back(pair(snap.density, psi).real());
      report.mass_ok = report.mass_ok && mass_check(snap, th.mass_tol).passes;
      report.total_ok = report.total_ok && std::abs(p.total_pairing - 1.0) <= th.mass_tol;
      report.wrap_ok = report.wrap_ok && p.wrap_fraction <= th.wrap_tol;
      if (t != 0.0) {
        const auto d = dispersive_bound_check(u, e, t, rho);
        p.bound = d.bound;
        report.dispersive_ok = report.dispersive_ok && d.passes;
      }
      report.points.push_back(std::move(p));
    }
    sqrt_l1.push_back(sqrt_mollifier_l1_quadrature(rho, e));
  }
  report.sqrt_l1_rate = eps_rate(eps, sqrt_l1).slope;

  const double needed = 0.5 * rho.dim() - th.rate_slack;
  report.rates_ok = true;
  for (double t : times) {
    if (t == 0.0) continue;
    for (std::size_t k = 0; k < tests.size(); ++k) {
      std::vector<double> values;
      for (const auto& p : report.points) {
        if (p.t == t) values.push_back(std::abs(p.pairings[k]));
      }
      FreeRate r{t, report.tests[k], eps_rate(eps, values).slope, false};
      r.passes = r.rate >= needed;
      report.rates_ok = report.rates_ok && r.passes;
      report.rates.push_back(r);
    }
  }
  report.passes = report.mass_ok && report.total_ok && report.dispersive_ok && report.rates_ok &&
                  report.wrap_ok;
  return report;
}

FreeExampleReport vague_convergence_check(const Mollifier& rho, double t,
                                          const std::vector<TestFunctionSpec>& tests,
                                          const EpsGrid& eps, const FreeBoxPolicy& box) {
  if (t == 0.0) throw PreconditionError("vague convergence to 0 is claimed only for t != 0");
  return free_example(rho, eps, {t}, tests, box);
}

CrossValidation cross_validate_cn(const Field& u0, double t, int steps) {
  if (steps < 1) throw PreconditionError("cross validation needs at least one step");
  CoefficientNet free;
  free.c = {CoefficientFamily::constant(1.0)};
  free.c0 = 1.0;
  const double dt = t / steps;
  CrankNicolsonStepper stepper(free, 1.0, u0.grid(), dt);
  Field::Values u = u0.values();
  for (int m = 0; m < steps; ++m) stepper.step(u, m * dt);
  const Field reference = free_evolve(u0, t);
  return {norm_l2(Field(u0.grid(), u) - reference), norm_l2(reference)};
}

OrderStudy cn_order_study(const std::function<Complex(const Point&)>& u0, int dim,
                          double half_width, Eigen::Index points, int steps, double t, int levels) {
  if (levels < 2) throw PreconditionError("an order study needs at least two levels");
  OrderStudy study;
  for (int k = 0; k < levels; ++k) {
    const Grid grid(dim, half_width, points << k);
    const Field data = Field::sample(grid, u0);
    study.points.push_back(grid.points_per_axis());
    study.steps.push_back(steps << k);
    study.errors.push_back(cross_validate_cn(data, t, steps << k).error);
  }
  study.min_order = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < study.errors.size(); ++k) {
    study.orders.push_back(std::log2(study.errors[k] / study.errors[k + 1]));
    study.min_order = std::min(study.min_order, study.orders.back());
  }
  return study;
}

}  // namespace colombeau
