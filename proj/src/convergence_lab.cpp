#include "colombeau/convergence_lab.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "colombeau/asymptotics.hpp"
#include "colombeau/errors.hpp"
#include "colombeau/norms.hpp"
#include "colombeau/spectral.hpp"

namespace colombeau {

namespace {

/// Convolution with rho_eps on a fixed grid, kernel spectrum cached.
class GridMollifier {
 public:
  GridMollifier(const Grid& grid, const Mollifier& rho, double eps) : grid_(grid), fft_(grid) {
    require_resolution(grid, eps);
    kernel_ = fft_.forward(offset_kernel(grid, [&](double r) { return rho.scaled(r, eps); }));
    kernel_ *= grid.cell_volume();
  }

  Field::Values apply(const Field::Values& u) {
    return fft_.inverse(fft_.forward(u).cwiseProduct(kernel_));
  }

 private:
  Grid grid_;
  SpectralTransform<double> fft_;
  Field::Values kernel_;
};

Field::Values sample_forcing(const ForcingData& f, const Grid& grid, double t) {
  Field::Values v(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) v(i) = f(grid.point(i), t);
  return v;
}

/// Solves on `grid` with `steps` steps and keeps the state every
/// steps / (count - 1) steps.
std::vector<Field> trajectory(const CoefficientNet& coeffs, const Grid& grid,
                              const Field::Values& initial, const Forcing& forcing, double T,
                              int steps, int count) {
  const double dt = T / steps;
  const int every = steps / (count - 1);
  CrankNicolsonStepper stepper(coeffs, 1.0, grid, dt, forcing);
  Field::Values u = initial;
  std::vector<Field> states{Field(grid, u)};
  for (int m = 0; m < steps; ++m) {
    stepper.step(u, m * dt);
    if ((m + 1) % every == 0) states.emplace_back(grid, u);
  }
  return states;
}

Field subsample_even(const Field& fine, const Grid& coarse) {
  const Grid& g = fine.grid();
  Field::Values v(coarse.size());
  for (Eigen::Index i = 0; i < coarse.size(); ++i) {
    const auto idx = coarse.unravel(i);
    v(i) = fine[g.ravel(2 * idx[0], 2 * idx[1])];
  }
  return Field(coarse, std::move(v));
}

}  // namespace

Field mollify_field(const Field& u, const Mollifier& rho, double eps) {
  GridMollifier m(u.grid(), rho, eps);
  return Field(u.grid(), m.apply(u.values()));
}

CoherenceReport coherence_experiment(const CoherenceSetup& s) {
  if (s.snapshots < 2) throw PreconditionError("coherence needs at least two comparison times");
  const Grid& grid = s.grid;
  const int intervals = s.snapshots - 1;
  int steps = s.time_steps > 0 ? s.time_steps
                               : static_cast<int>(std::ceil(s.T / grid.spacing() - 1e-9));
  steps = (steps + intervals - 1) / intervals * intervals;

  CoherenceReport report;
  for (int k = 0; k < s.snapshots; ++k) report.times.push_back(s.T * k / intervals);

  auto raw_forcing = [&](const Grid& g) -> Forcing {
    if (!s.f0) return {};
    return [f = s.f0, g](double t) { return sample_forcing(f, g, t); };
  };

  const Field g0 = Field::sample(grid, s.g0);
  const auto reference = trajectory(s.coeffs, grid, g0.values(), raw_forcing(grid), s.T, steps,
                                    s.snapshots);
  SpectralTransform<double> fft(grid);
  if (s.check_reference) {
    const Grid fine(grid.dim(), grid.half_width(), 2 * grid.points_per_axis());
    const auto fine_states = trajectory(s.coeffs, fine, Field::sample(fine, s.g0).values(),
                                        raw_forcing(fine), s.T, 2 * steps, s.snapshots);
    for (int k = 0; k < s.snapshots; ++k) {
      const Field diff = subsample_even(fine_states[k], grid) - reference[k];
      report.reference_self_diff = std::max(report.reference_self_diff, sobolev_norms(diff, fft).h1);
    }
    report.reference_ok = report.reference_self_diff < s.tol / 10;
    if (!report.reference_ok) {
      std::ostringstream msg;
      msg << "coherence reference is under-resolved: (M, N_t) and (2M, 2N_t) differ by "
          << report.reference_self_diff << " in sup-t H^1, above tol/10 = " << s.tol / 10;
      throw Error(msg.str());
    }
  } else {
    report.reference_ok = true;
  }

  const auto times = sample_times(s.T, 33);
  report.c1 = s.T / s.coeffs.c0 *
              (s.coeffs.dt_c_sup(grid, 1.0, times) + s.coeffs.dt_v_sup(grid, 1.0, times));
  report.c2 = s.T * (s.coeffs.c0 + s.coeffs.v_sup(grid, 1.0, times));
  const double growth = std::sqrt(report.c2 * std::exp(report.c1));

  std::vector<double> diffs;
  for (double e : s.eps) {
    auto mollifier = std::make_shared<GridMollifier>(grid, s.rho, e);
    const Field g_eps(grid, mollifier->apply(g0.values()));
    Forcing forcing;
    if (s.f0) {
      forcing = [f = s.f0, grid, mollifier](double t) {
        return mollifier->apply(sample_forcing(f, grid, t));
      };
    }
    const auto states = trajectory(s.coeffs, grid, g_eps.values(), forcing, s.T, steps, s.snapshots);
    CoherenceRow row;
    row.eps = e;
    for (int k = 0; k < s.snapshots; ++k) {
      row.h1_diff.push_back(sobolev_norms(states[k] - reference[k], fft).h1);
      row.sup_h1_diff = std::max(row.sup_h1_diff, row.h1_diff.back());
    }
    double data = std::pow(sobolev_norms(g_eps - g0, fft).h1, 2);
    if (s.f0) {
      constexpr double h = 1e-5;
      const auto raw = raw_forcing(grid);
      auto diff_at = [&](double t) { return Field(grid, forcing(t) - raw(t)); };
      std::vector<double> integrand;
      for (double t : times) {
        const Field::Values slope = (diff_at(t + h).values() - diff_at(t - h).values()) / (2 * h);
        const double a = norm_l2(diff_at(t)), b = norm_hminus1(Field(grid, slope));
        integrand.push_back(a * a + b * b);
      }
      const double dt = s.T / (times.size() - 1);
      for (std::size_t i = 0; i + 1 < integrand.size(); ++i) data += 0.5 * dt * (integrand[i] + integrand[i + 1]);
    }
    row.data_diff = std::sqrt(data);
    row.energy_ratio = row.data_diff > 0 ? row.sup_h1_diff / (growth * row.data_diff) : 0.0;
    diffs.push_back(row.sup_h1_diff);
    report.rows.push_back(std::move(row));
  }

  constexpr double kNoiseFloor = 1e-14;
  report.monotone = true;
  for (std::size_t k = 1; k < diffs.size(); ++k) {
    if (!(diffs[k] < diffs[k - 1]) && diffs[k] > kNoiseFloor) report.monotone = false;
  }
  report.final_diff = diffs.back();
  report.final_ok = report.final_diff < s.tol;
  bool all_zero = true;
  for (double d : diffs) all_zero = all_zero && d <= kNoiseFloor;
  if (all_zero) {
    report.rate = 0.0;
    report.rate_ok = true;
  } else {
    report.rate = eps_rate(s.eps, diffs).slope;
    report.rate_ok = report.rate >= s.min_rate;
  }
  report.passes = report.reference_ok && report.monotone && report.final_ok && report.rate_ok;
  return report;
}

SolutionAssociationReport association_of_solution(const AssociationSetup& setup) {
  const auto& times = setup.problem.snapshot_times;
  if (times.empty()) throw PreconditionError("association needs at least one snapshot time");
  SolutionAssociationReport report;
  std::vector<std::vector<std::vector<Complex>>> values(
      setup.tests.size(), std::vector<std::vector<Complex>>(times.size()));
  for (double e : setup.eps) {
    const SolveResult result = solve(setup.problem, e);
    const Grid& grid = result.final_state().grid();
    std::vector<TestFunction> psis;
    for (const auto& spec : setup.tests) psis.emplace_back(grid, spec);
    std::vector<double> masses;
    for (std::size_t k = 0; k < times.size(); ++k) {
      const Field* state = nullptr;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& [t, u] : result.snapshots) {
        if (std::abs(t - times[k]) < best) {
          best = std::abs(t - times[k]);
          state = &u;
        }
      }
      masses.push_back(mass(*state));
      const Field quantity = setup.quantity == PairingQuantity::solution
                                 ? *state
                                 : Field::from_real(grid, state->modulus_squared());
      for (std::size_t j = 0; j < psis.size(); ++j) values[j][k].push_back(pair(quantity, psis[j]));
    }
    report.masses.push_back(std::move(masses));
  }

  report.all_cauchy = true;
  for (std::size_t j = 0; j < setup.tests.size(); ++j) {
    for (std::size_t k = 0; k < times.size(); ++k) {
      PairingSeries s;
      s.test = setup.tests[j].descriptor();
      s.t = times[k];
      s.values = values[j][k];
      std::vector<double> moduli;
      for (const auto& v : s.values) moduli.push_back(std::abs(v));
      s.decay_rate = eps_rate(setup.eps, moduli).slope;

      double log_sum = 0;
      int count = 0;
      bool vanished = true;
      for (std::size_t i = 0; i + 2 < s.values.size(); ++i) {
        const double a = std::abs(s.values[i + 1] - s.values[i]);
        const double b = std::abs(s.values[i + 2] - s.values[i + 1]);
        if (a > 0 || b > 0) vanished = false;
        if (a > 0 && b > 0) {
          log_sum += std::log(a / b);
          ++count;
        }
      }
      const Complex last = s.values.back();
      const Complex step = s.values.back() - s.values[s.values.size() - 2];
      if (vanished) {
        s.contraction = std::numeric_limits<double>::infinity();
        s.cauchy = true;
        s.limit = last;
      } else {
        s.contraction = count > 0 ? std::exp(log_sum / count) : 0.0;
        s.cauchy = s.contraction >= setup.min_contraction;
        const double r = s.contraction > 1 ? 1.0 / s.contraction : 0.0;
        s.limit = last + step * (r / (1.0 - r));
      }
      if (setup.oracle) {
        s.oracle = setup.oracle(setup.tests[j], s.t);
        s.oracle_gap = std::abs(s.limit - *s.oracle);
      }
      report.all_cauchy = report.all_cauchy && s.cauchy;
      report.series.push_back(std::move(s));
    }
  }
  report.verdict = report.all_cauchy ? "associated on the tested range"
                                     : "no association detected at tolerance";
  return report;
}

}  // namespace colombeau
