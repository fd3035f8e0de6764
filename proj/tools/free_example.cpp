#include <algorithm>
#include <cmath>

#include "colombeau/free_propagator.hpp"
#include "experiments.hpp"

namespace colombeau::app {

ExperimentResult run_free_example(const Config& cfg, const RunContext&) {
  ExperimentResult out;
  Stopwatch clock;
  const int dim = cfg.dim();
  const Mollifier rho = cfg.mollifier("mollifier");
  const EpsGrid eps = cfg.eps("eps");
  const auto times = cfg.reals("times");
  const auto tests = cfg.tests("tests");
  FreeBoxPolicy box;
  box.spread = cfg.real("spread");
  box.tail_tol = cfg.real("tail_tol");
  box.min_width = cfg.real("min_width");
  FreeExampleThresholds th;
  th.mass_tol = cfg.real("mass_tol");
  th.rate_slack = cfg.real("rate_slack");
  th.wrap_tol = cfg.real("wrap_tol");
  double t_max = 0;
  for (double t : times) t_max = std::max(t_max, std::abs(t));
  for (double e : eps) require_node_budget(box.grid_for(rho, e, t_max), "free_example at eps=" + cell(e));

  const auto r = free_example(rho, eps, times, tests, box, th);
  clock.lap("sweep", out);

  std::vector<std::string> cols{"eps", "t", "mass", "sup_norm", "bound", "wrap_fraction", "total_pairing"};
  for (const auto& name : r.tests) cols.push_back("pairing[" + name + "]");
  auto& sweep = out.table("sweep", cols);
  double worst_mass = 0, worst_ratio = 0, worst_wrap = 0, worst_total = 0;
  for (const auto& pt : r.points) {
    std::vector<std::string> row{cell(pt.eps), cell(pt.t), cell(pt.mass), cell(pt.sup_norm),
                                 cell(pt.bound), cell(pt.wrap_fraction), cell(pt.total_pairing)};
    for (double v : pt.pairings) row.push_back(cell(v));
    sweep.add(row);
    worst_mass = std::max(worst_mass, std::abs(pt.mass - 1.0));
    worst_total = std::max(worst_total, std::abs(pt.total_pairing - 1.0));
    worst_wrap = std::max(worst_wrap, pt.wrap_fraction);
    if (pt.t != 0.0) worst_ratio = std::max(worst_ratio, pt.sup_norm / pt.bound);
  }
  auto& rates = out.table("rates", {"t", "test", "slope", "expected", "passes"});
  double lowest = 1e300;
  for (const auto& rate : r.rates) {
    rates.add({cell(rate.t), rate.test, cell(rate.rate), cell(0.5 * dim), cell(rate.passes)});
    lowest = std::min(lowest, rate.rate);
  }
  auto& l1 = out.table("sqrt_l1", {"eps", "closed_form", "quadrature"});
  for (double e : eps) l1.add({cell(e), cell(sqrt_mollifier_l1(rho, e)), cell(sqrt_mollifier_l1_quadrature(rho, e))});

  out.check("mass", r.mass_ok, cell(worst_mass), "|mass - 1| <= " + cell(th.mass_tol),
            cell(r.points.size()) + " (eps, t) points");
  out.check("total_pairing", r.total_ok, cell(worst_total), "<mu_eps^t, 1> = 1");
  out.check("dispersive_bound", r.dispersive_ok, cell(worst_ratio), "sup|u| / bound <= 1");
  out.check("pairing_rates", r.rates_ok, cell(lowest), ">= n/2 - slack = " + cell(0.5 * dim - th.rate_slack),
            cell(r.rates.size()) + " (t, psi) fits");
  out.check("wrap_around", r.wrap_ok, cell(worst_wrap), "spectral fraction <= " + cell(th.wrap_tol));
  out.check("sqrt_l1_rate", std::abs(r.sqrt_l1_rate - 0.5 * dim) <= 0.05, cell(r.sqrt_l1_rate),
            "n/2 +- 0.05");
  clock.lap("tables", out);
  return out;
}

}  // namespace colombeau::app
