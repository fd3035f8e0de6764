#include <algorithm>
#include <cmath>

#include "colombeau/asymptotics.hpp"
#include "colombeau/schrodinger.hpp"
#include "data.hpp"
#include "experiments.hpp"
#include "pool.hpp"

namespace colombeau::app {

namespace {

struct Run {
  SolveResult solve;
  EnergyReport energy;
  std::vector<std::pair<double, CoercivityReport>> coercivity;  // (t, report)
  double min_c = 0;
  Eigen::Index points = 0;
};

}  // namespace

ExperimentResult run_schrodinger_sweep(const Config& cfg, const RunContext& ctx) {
  ExperimentResult out;
  Stopwatch clock;
  const EpsGrid eps = cfg.eps("eps");
  const Mollifier rho = cfg.mollifier("mollifier");

  CauchyProblem p;
  p.coeffs = coefficient_net(cfg);
  p.initial = initial_net(cfg.data("data"), rho);
  p.T = cfg.real("T");
  p.time_steps = static_cast<int>(cfg.integer("time_steps"));
  p.grid = grid_policy(cfg);
  p.history_stride = static_cast<int>(cfg.integer("history_stride"));
  const int probes = static_cast<int>(cfg.integer("probes"));
  const double kappa = cfg.real("kappa");
  const auto audit_times = sample_times(p.T, 3);
  for (double e : eps) require_node_budget(p.grid.for_eps(e), "schrodinger_sweep at eps=" + cell(e));

  const auto runs = parallel_map(ctx.workers, eps.size(), [&](std::size_t i) {
    const double e = eps[i];
    const Grid grid = p.grid.for_eps(e);
    Run r;
    r.points = grid.points_per_axis();
    r.min_c = p.coeffs.min_c(grid, e, sample_times(p.T, 17));
    r.solve = solve(p, e);
    r.energy = energy_audit(r.solve, p, e, kappa);
    if (probes > 0) {
      const auto fields = random_probes(grid, probes, ctx.seed + 7919 * i);
      for (double t : audit_times) r.coercivity.emplace_back(t, coercivity_check(p.coeffs, e, grid, t, fields));
    }
    return r;
  });
  clock.lap("solve", out);

  auto& norms = out.table("norms", {"eps", "t", "l2", "h1", "h2"});
  auto& energy = out.table("energy", {"eps", "lhs", "c1", "c2", "data", "kappa", "rhs", "ratio"});
  auto& solver = out.table("solver", {"eps", "points", "dt", "steps", "linear_iterations",
                                      "max_residual", "max_step_drift", "sup_h1"});
  auto& coercive = out.table("coercivity", {"eps", "t", "probe", "form", "lhs", "rhs", "passes"});
  std::vector<double> sup_h1;
  double drift = 0, min_c = 1e300, worst_ratio = 0;
  bool coercive_ok = true, ratios_finite = true;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double e = eps[i];
    const Run& r = runs[i];
    for (const auto& row : r.solve.history) norms.add({cell(e), cell(row.t), cell(row.l2), cell(row.h1), cell(row.h2)});
    const auto& en = r.energy;
    energy.add({cell(e), cell(en.lhs), cell(en.c1), cell(en.c2), cell(en.data), cell(en.kappa), cell(en.rhs),
                cell(en.ratio)});
    const auto& st = r.solve.stats;
    solver.add({cell(e), cell(static_cast<long>(r.points)), cell(r.solve.dt), cell(st.steps),
                cell(st.linear_iterations), cell(st.max_residual), cell(r.solve.max_step_drift),
                cell(r.solve.sup_h1())});
    for (const auto& [t, report] : r.coercivity) {
      for (std::size_t k = 0; k < report.probes.size(); ++k) {
        const auto& pr = report.probes[k];
        coercive.add({cell(e), cell(t), cell(k), cell(pr.form), cell(pr.lhs), cell(pr.rhs), cell(pr.passes)});
      }
      coercive_ok = coercive_ok && report.passes;
    }
    sup_h1.push_back(r.solve.sup_h1());
    drift = std::max(drift, r.solve.max_step_drift);
    min_c = std::min(min_c, r.min_c);
    ratios_finite = ratios_finite && std::isfinite(en.ratio);
    worst_ratio = std::max(worst_ratio, en.ratio);
  }

  out.check("positivity", min_c >= p.coeffs.c0, cell(min_c), "min c_k >= c0 = " + cell(p.coeffs.c0));
  if (probes > 0) {
    out.check("coercivity", coercive_ok, coercive_ok ? "all" : "violated",
              "a + lambda |phi|^2 >= c0 |phi|_H1^2", cell(probes) + " probes x " +
                                                         cell(audit_times.size()) + " times per eps");
  }
  const double drift_tol = cfg.real("drift_tol");
  out.check("unitarity", drift <= drift_tol, cell(drift), "per-step L2 drift <= " + cell(drift_tol));

  FitThresholds fth;
  fth.max_residual = cfg.real("max_residual");
  const AsymptoticFit fit = classify_moderate(ScalarNet(eps, sup_h1, "sup_t |u|_H1"), fth);
  auto& fits = out.table("moderateness", {"seminorm", "slope", "intercept", "residual_rms", "verdict"});
  fits.add({"sup_t H1", cell(fit.slope), cell(fit.intercept), cell(fit.residual_rms), fit.verdict.describe()});
  out.check("moderateness", fit.verdict.kind == VerdictKind::moderate && std::isfinite(fit.slope) &&
                                fit.residual_rms < fth.max_residual,
            cell(fit.slope), "finite slope, residual < " + cell(fth.max_residual),
            "residual " + cell(fit.residual_rms) + ", " + fit.verdict.describe());
  out.check("energy_ratio_finite", ratios_finite, cell(worst_ratio), "finite",
            "largest lhs / (kappa c2 e^c1 data)");
  out.notes.push_back("energy bound constants are realized with kappa = " + cell(kappa) +
                      "; ratios are reported, the inequality itself is not asserted");
  clock.lap("fits", out);

  const auto audit = audit_log_type(p.coeffs, eps, [&](double e) { return p.grid.for_eps(e); }, p.T);
  auto& lt = out.table("log_type", {"eps", "dt_c_sup", "dt_v_sup"});
  for (std::size_t i = 0; i < eps.size(); ++i) lt.add({cell(eps[i]), cell(audit.dt_c[i]), cell(audit.dt_v[i])});
  out.check("log_type[c]", audit.c_fit.passes, cell(audit.c_fit.log_coefficient),
            "A + B log(1/eps), relative residual < 0.2",
            "relative residual " + cell(audit.c_fit.relative_residual) + ", power slope " +
                cell(audit.c_fit.power_slope));
  out.check("log_type[V]", audit.v_fit.passes, cell(audit.v_fit.log_coefficient),
            "A + B log(1/eps), relative residual < 0.2",
            "relative residual " + cell(audit.v_fit.relative_residual) + ", power slope " +
                cell(audit.v_fit.power_slope));
  clock.lap("log_type", out);

  const int q = static_cast<int>(cfg.integer("uniqueness_q"));
  if (q > 0) {
    const auto w = [](const Grid& g) {
      return Field::sample(g, [](const Point& x) { return std::exp(Complex(-0.5 * x.squaredNorm(), x(0))); });
    };
    const auto u = uniqueness_probe(p, eps, q, w, cfg.real("uniqueness_tol"));
    auto& ut = out.table("uniqueness", {"eps", "difference", "growth"});
    for (const auto& row : u.rows) ut.add({cell(row.eps), cell(row.difference), cell(row.growth)});
    out.check("uniqueness_probe[q=" + cell(q) + "]", u.passes, cell(u.slope),
              ">= q - N - tol = " + cell(q - u.growth_order - u.tolerance),
              "growth order N=" + cell(u.growth_order) + (u.reason.empty() ? "" : ", " + u.reason));
    clock.lap("uniqueness", out);
  }
  return out;
}

}  // namespace colombeau::app
