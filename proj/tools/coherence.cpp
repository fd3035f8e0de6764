#include "colombeau/convergence_lab.hpp"
#include "data.hpp"
#include "experiments.hpp"

namespace colombeau::app {

ExperimentResult run_coherence(const Config& cfg, const RunContext&) {
  ExperimentResult out;
  Stopwatch clock;
  const DataSpec data = cfg.data("data");
  CoherenceSetup s;
  s.g0 = profile(data);
  if (cfg.choice("forcing") == "pulse") s.f0 = pulse_forcing();
  s.coeffs = coefficient_net(cfg);
  s.rho = cfg.mollifier("mollifier");
  s.eps = cfg.eps("eps");
  s.T = cfg.real("T");
  s.grid = Grid(cfg.dim(), cfg.real("half_width"), cfg.integer("points"));
  s.time_steps = static_cast<int>(cfg.integer("time_steps"));
  s.snapshots = static_cast<int>(cfg.integer("snapshots"));
  s.tol = cfg.real("tol");
  s.min_rate = cfg.real("min_rate");
  s.check_reference = cfg.flag("check_reference");
  require_node_budget(s.grid, "coherence");
  boundary_warning(Field::sample(s.grid, s.g0), "initial data", out);

  const auto r = coherence_experiment(s);
  clock.lap("solve", out);

  auto& diffs = out.table("coherence", {"eps", "t", "h1_diff"});
  auto& rows = out.table("summary", {"eps", "sup_h1_diff", "data_diff", "energy_ratio"});
  for (const auto& row : r.rows) {
    for (std::size_t k = 0; k < r.times.size(); ++k) diffs.add({cell(row.eps), cell(r.times[k]), cell(row.h1_diff[k])});
    rows.add({cell(row.eps), cell(row.sup_h1_diff), cell(row.data_diff), cell(row.energy_ratio)});
  }
  if (s.check_reference) {
    out.check("reference_self_convergence", r.reference_ok, cell(r.reference_self_diff),
              "< tol / 10 = " + cell(s.tol / 10));
  }
  out.check("monotone", r.monotone, r.monotone ? "yes" : "no", "sup-t H1 difference decreases with eps");
  out.check("rate", r.rate_ok, cell(r.rate), ">= " + cell(s.min_rate));
  out.check("final_difference", r.final_ok, cell(r.final_diff), "< " + cell(s.tol));
  out.notes.push_back(data.kind == "triangle"
                          ? "data class: Lipschitz kink in H^1, sampled on the grid (approximates H^1 only)"
                          : "data class: Gaussian wave packet (smooth, in every H^s)");
  return out;
}

}  // namespace colombeau::app
