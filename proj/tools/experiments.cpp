#include "experiments.hpp"

#include "colombeau/errors.hpp"
#include "colombeau/key_value.hpp"
#include "colombeau/norms.hpp"

namespace colombeau::app {

ExperimentResult run_experiment(const Config& cfg, const RunContext& ctx) {
  const auto& e = cfg.experiment();
  if (e == "sqrt_measure") return run_sqrt_measure(cfg, ctx);
  if (e == "schrodinger_sweep") return run_schrodinger_sweep(cfg, ctx);
  if (e == "free_example") return run_free_example(cfg, ctx);
  if (e == "coherence") return run_coherence(cfg, ctx);
  if (e == "association") return run_association(cfg, ctx);
  if (e == "selftest") return run_selftest(cfg, ctx);
  throw std::logic_error("no runner for experiment " + e);
}

void require_node_budget(const Grid& grid, const std::string& what) {
  if (grid.size() > kNodeBudget) {
    throw ResolutionError(what + ": grid of " + std::to_string(grid.size()) + " nodes (M=" +
                              std::to_string(grid.points_per_axis()) + ") exceeds the budget of " +
                              std::to_string(kNodeBudget) + " nodes; coarsen eps or shrink the box",
                          static_cast<long>(grid.points_per_axis()));
  }
}

void boundary_warning(const Field& u, const std::string& what, ExperimentResult& out) {
  const double ratio = boundary_decay_ratio(u);
  if (ratio >= 1e-10) {
    out.warnings.push_back(what + ": boundary value is " + format_double(ratio) +
                           " of the peak (>= 1e-10); enlarge the box");
  }
}

}  // namespace colombeau::app
