#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include "colombeau/grid.hpp"
#include "config.hpp"
#include "results.hpp"

namespace colombeau::app {

struct RunContext {
  int workers = 1;
  std::uint64_t seed = 1;
};

/// Dispatches on cfg.experiment(). Numerical failures inside the library
/// propagate as colombeau::Error.
ExperimentResult run_experiment(const Config& cfg, const RunContext& ctx);

ExperimentResult run_sqrt_measure(const Config& cfg, const RunContext& ctx);
ExperimentResult run_schrodinger_sweep(const Config& cfg, const RunContext& ctx);
ExperimentResult run_free_example(const Config& cfg, const RunContext& ctx);
ExperimentResult run_coherence(const Config& cfg, const RunContext& ctx);
ExperimentResult run_association(const Config& cfg, const RunContext& ctx);
ExperimentResult run_selftest(const Config& cfg, const RunContext& ctx);

/// Largest grid (total nodes) an experiment may allocate per field.
inline constexpr Eigen::Index kNodeBudget = Eigen::Index(1) << 25;

/// Throws ResolutionError when the grid exceeds the node budget.
void require_node_budget(const Grid& grid, const std::string& what);

/// Warns when |u| on the outermost layer exceeds 1e-10 of its peak.
void boundary_warning(const Field& u, const std::string& what, ExperimentResult& out);

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  void lap(const std::string& stage, ExperimentResult& out) {
    out.timings.emplace_back(stage, seconds());
    start_ = std::chrono::steady_clock::now();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace colombeau::app
