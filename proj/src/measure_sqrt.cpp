#include "colombeau/measure_sqrt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "colombeau/errors.hpp"
#include "colombeau/norms.hpp"
#include "colombeau/quadrature.hpp"
#include "colombeau/spectral.hpp"

namespace colombeau {

namespace {

// Lower bound of the cell-averaged convolution (d * rho_eps)(x): a box holding
// mass `fraction` of the part, widened by half a cell, sits within distance D
// of x, and rho is radially decreasing.
double density_lower_bound(const DensityPart& d, const Point& x, const Mollifier& rho, double eps,
                           const Grid& grid) {
  double lo = d.lower, hi = d.upper, fraction = 1.0;
  if (d.kind == DensityKind::gaussian) fraction = std::erf(std::sqrt(2.0));  // mass within 2 sigma
  double far = 0;
  for (int k = 0; k < grid.dim(); ++k) {
    if (d.kind == DensityKind::gaussian) {
      lo = d.center(k) - 2 * d.width;
      hi = d.center(k) + 2 * d.width;
    }
    const double reach = std::max(std::abs(x(k) - lo), std::abs(x(k) - hi)) + 0.5 * grid.spacing();
    far += reach * reach;
  }
  return d.weight * std::pow(fraction, grid.dim()) * rho.scaled(std::sqrt(far), eps);
}

}  // namespace

Field mollify_measure(const Measure& mu, const Mollifier& rho, double eps, const Grid& grid) {
  if (mu.dim() != grid.dim() || rho.dim() != grid.dim()) {
    throw GridError("measure, mollifier and grid dimensions differ");
  }
  require_resolution(grid, eps);
  Eigen::VectorXd h = Eigen::VectorXd::Zero(grid.size());
  for (const auto& atom : mu.atoms()) {
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      h(i) += atom.weight * rho.scaled((grid.point(i) - atom.location).norm(), eps);
    }
  }
  if (!mu.densities().empty()) {
    Eigen::VectorXd cells = Eigen::VectorXd::Zero(grid.size());
    for (const auto& d : mu.densities()) {
      for (Eigen::Index i = 0; i < grid.size(); ++i) {
        cells(i) += d.cell_mass(grid.point(i), grid.spacing(), grid.dim());
      }
    }
    const Field density = Field::from_real(grid, cells / grid.cell_volume());
    const auto kernel = offset_kernel(grid, [&](double r) { return rho.scaled(r, eps); });
    const Eigen::VectorXd smooth = periodic_convolve(density, kernel).real();
    // Far from the support the FFT result is pure round-off; a rigorous
    // lower bound keeps those nodes positive.
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      double floor = 0;
      for (const auto& d : mu.densities()) floor += density_lower_bound(d, grid.point(i), rho, eps, grid);
      h(i) += std::max(smooth(i), floor);
    }
  }
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    if (!(h(i) > 0.0)) {
      std::ostringstream msg;
      msg << "mollified measure is not strictly positive at node " << i << " (value " << h(i)
          << ", eps=" << eps << ")";
      throw PositivityError(msg.str());
    }
  }
  return Field::from_real(grid, h);
}

Field sqrt_root(const Field& h) {
  Eigen::VectorXd out(h.size());
  for (Eigen::Index i = 0; i < h.size(); ++i) {
    if (h[i].imag() != 0.0 || !(h[i].real() > 0.0)) {
      throw PositivityError("square root needs a strictly positive real field (node " +
                            std::to_string(i) + ")");
    }
    out(i) = std::sqrt(h[i].real());
  }
  return Field::from_real(h.grid(), out);
}

LowerBoundReport lower_bound_check(const Field& h, const Measure& mu, const Mollifier& rho,
                                   double eps, double k_radius) {
  if (!(k_radius > 0)) throw PreconditionError("K radius must be positive");
  LowerBoundReport r;
  r.eps = eps;
  const Grid& grid = h.grid();
  r.measured_inf = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    if (grid.point(i).norm() <= k_radius) r.measured_inf = std::min(r.measured_inf, h[i].real());
  }
  if (!std::isfinite(r.measured_inf)) throw GridError("no grid node lies inside K");

  const double n = grid.dim();
  const double m0 = rho.tail_exponent();
  r.a_radius = mu.central_radius(0.5);
  r.a_mass = mu.mass_within(r.a_radius);
  r.r_k = k_radius + r.a_radius;
  r.precondition_ok = eps < 1.0 / r.r_k;
  r.paper_bound = std::pow(eps, m0 - n) / (2.0 * std::pow(r.r_k, m0));
  r.sharp_bound = r.a_mass * rho.scaled(r.r_k, eps);
  r.tail_bound = r.a_mass * rho.tail_constant() * std::pow(eps, m0 - n) * std::pow(r.r_k, -m0);
  r.paper_ok = r.measured_inf >= r.paper_bound;
  r.sharp_ok = r.measured_inf >= r.sharp_bound * (1.0 - 1e-6);
  return r;
}

LowerBoundSweep lower_bound_sweep(const Measure& mu, const Mollifier& rho, const EpsGrid& eps,
                                  const Grid& grid, double k_radius) {
  LowerBoundSweep sweep;
  std::vector<double> infs;
  for (double e : eps) {
    const Field h = mollify_measure(mu, rho, e, grid);
    sweep.reports.push_back(lower_bound_check(h, mu, rho, e, k_radius));
    infs.push_back(sweep.reports.back().measured_inf);
  }
  sweep.fit = eps_rate(eps, infs);
  return sweep;
}

namespace {

double transition_bump(double t) {
  const double s = 2.0 * t - 1.0;
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - s * s));
}

double transition_integral(double upto) {
  return integrate_interval(transition_bump, 0.0, upto, 16);
}

}  // namespace

CutoffFamily::CutoffFamily() : normalization_(transition_integral(1.0)) {}

int CutoffFamily::index(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw PreconditionError("eps must lie in (0, 1]");
  int e = 0;
  const double f = std::frexp(eps, &e);  // eps = f 2^e, f in [1/2, 1)
  return f == 0.5 ? 1 - e : -e;
}

double CutoffFamily::chi0(double r) const {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  return 1.0 - transition_integral(r - 1.0) / normalization_;
}

double CutoffFamily::chi(int j, double r) const { return chi0(std::ldexp(r, -j)); }

Field CutoffFamily::sample(int j, const Grid& grid) const {
  Eigen::VectorXd v(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) v(i) = chi(j, grid.point(i).norm());
  return Field::from_real(grid, v);
}

CutoffSqrt cutoff_sqrt(const Measure& mu, const Mollifier& rho, const CutoffFamily& chi,
                       double eps, const Grid& grid) {
  const int j = CutoffFamily::index(eps);
  const double support = std::ldexp(1.0, j + 1);
  if (grid.half_width() < support) {
    std::ostringstream msg;
    msg << "box half width " << grid.half_width() << " does not contain the cutoff support |x| <= "
        << support << " for eps=" << eps << "; need L >= " << support;
    throw GridError(msg.str());
  }
  Field phi = sqrt_root(mollify_measure(mu, rho, eps, grid));
  Field g = chi.sample(j, grid) * phi;
  return {std::move(g), std::move(phi), j};
}

AssociationReport association_check(const FieldNet& squares, const Measure& mu,
                                    const std::vector<TestFunctionSpec>& tests,
                                    const AssociationThresholds& th) {
  AssociationReport report;
  report.passes = true;
  const Grid& grid = squares[0].grid();
  for (const auto& spec : tests) {
    const TestFunction psi(grid, spec);
    AssociationRow row;
    row.test = spec.descriptor();
    row.target = mu.apply(spec);
    for (const auto& item : squares.items()) row.gaps.push_back(std::abs(pair(item, psi) - row.target));
    row.monotone = true;
    for (std::size_t k = 1; k < row.gaps.size(); ++k) {
      const bool shrinks = row.gaps[k] <= (1.0 + th.slack) * row.gaps[k - 1];
      if (!shrinks && row.gaps[k] > th.noise_floor) row.monotone = false;
    }
    row.final_gap = row.gaps.back();
    row.rate = eps_rate(squares.eps(), row.gaps).slope;
    row.passes = row.monotone && row.final_gap < th.final_tol;
    report.passes = report.passes && row.passes;
    report.rows.push_back(std::move(row));
  }
  return report;
}

VanishingReport vanishing_sqrt_check(const FieldNet& roots, const Mollifier& rho,
                                     const std::vector<TestFunctionSpec>& tests, double tol) {
  if (!rho.sqrt_integrable()) {
    throw PreconditionError("vanishing check needs a mollifier with integrable square root");
  }
  VanishingReport report;
  report.expected_rate = 0.5 * rho.dim();
  report.passes = true;
  const Grid& grid = roots[0].grid();
  for (const auto& spec : tests) {
    const TestFunction psi(grid, spec);
    VanishingRow row;
    row.test = spec.descriptor();
    for (const auto& item : roots.items()) row.pairings.push_back(std::abs(pair(item, psi)));
    row.rate = eps_rate(roots.eps(), row.pairings).slope;
    row.passes = std::abs(row.rate - report.expected_rate) <= tol;
    report.passes = report.passes && row.passes;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace colombeau
