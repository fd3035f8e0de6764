#include <algorithm>
#include <cmath>

#include "colombeau/convergence_lab.hpp"
#include "colombeau/free_propagator.hpp"
#include "data.hpp"
#include "experiments.hpp"

namespace colombeau::app {

ExperimentResult run_association(const Config& cfg, const RunContext&) {
  ExperimentResult out;
  Stopwatch clock;
  const int dim = cfg.dim();
  const DataSpec data = cfg.data("data");
  const Mollifier rho = cfg.mollifier("mollifier");

  AssociationSetup a;
  a.problem.coeffs = coefficient_net(cfg);
  a.problem.initial = initial_net(data, rho);
  a.problem.T = cfg.real("T");
  a.problem.time_steps = static_cast<int>(cfg.integer("time_steps"));
  a.problem.grid = grid_policy(cfg);
  a.problem.snapshot_times = cfg.reals("times");
  a.tests = cfg.tests("tests");
  a.eps = cfg.eps("eps");
  a.quantity = cfg.choice("quantity") == "density" ? PairingQuantity::density : PairingQuantity::solution;
  a.min_contraction = cfg.real("min_contraction");
  for (double e : a.eps) require_node_budget(a.problem.grid.for_eps(e), "association at eps=" + cell(e));

  if (cfg.choice("oracle") == "free") {
    // e^{it Laplacian} is symmetric: <e^{it Laplacian} g, psi> = <g, e^{it Laplacian} psi>.
    const InitialData g0 = profile(data);
    a.oracle = [dim, g0](const TestFunctionSpec& psi, double t) {
      const Grid g(dim, 16.0, dim == 1 ? Eigen::Index(1) << 14 : Eigen::Index(1) << 9);
      const Field evolved = free_evolve(Field::sample(g, [&](const Point& x) { return psi(x); }), t);
      if (!g0) return evolved[g.ravel(g.points_per_axis() / 2, dim == 1 ? 0 : g.points_per_axis() / 2)];
      const Field w = Field::sample(g, g0);
      return Complex(g.cell_volume()) * (w.values().array() * evolved.values().array()).sum();
    };
  }

  const auto r = association_of_solution(a);
  clock.lap("solve", out);

  auto& pairings = out.table("pairings", {"eps", "t", "psi", "pairing_re", "pairing_im"});
  auto& series = out.table("series", {"psi", "t", "contraction", "cauchy", "limit_re", "limit_im",
                                      "oracle_re", "oracle_im", "oracle_gap", "decay_rate"});
  for (const auto& s : r.series) {
    for (std::size_t i = 0; i < a.eps.size(); ++i) {
      pairings.add({cell(a.eps[i]), cell(s.t), s.test, cell(s.values[i].real()), cell(s.values[i].imag())});
    }
    const Complex o = s.oracle.value_or(Complex(NAN, NAN));
    series.add({s.test, cell(s.t), cell(s.contraction), cell(s.cauchy), cell(s.limit.real()),
                cell(s.limit.imag()), cell(o.real()), cell(o.imag()), cell(s.oracle ? s.oracle_gap : NAN),
                cell(s.decay_rate)});
  }
  auto& masses = out.table("masses", {"eps", "t", "mass"});
  double worst_mass = 0;
  for (std::size_t i = 0; i < a.eps.size(); ++i) {
    for (std::size_t k = 0; k < a.problem.snapshot_times.size(); ++k) {
      masses.add({cell(a.eps[i]), cell(a.problem.snapshot_times[k]), cell(r.masses[i][k])});
      worst_mass = std::max(worst_mass, std::abs(r.masses[i][k] - 1.0));
    }
  }

  if (data.kind == "sqrt_dirac") {
    // Square-root data: the pairings vanish like eps^{n/2} while |u|^2 keeps unit mass.
    const double slack = cfg.real("rate_slack");
    for (const auto& s : r.series) {
      if (s.t == 0.0 && a.quantity == PairingQuantity::density) continue;
      const bool ok = a.quantity == PairingQuantity::solution ? s.decay_rate >= 0.5 * dim - slack
                                                              : std::abs(s.decay_rate) <= slack;
      out.check("decay[" + s.test + ", t=" + cell(s.t) + "]", ok, cell(s.decay_rate),
                a.quantity == PairingQuantity::solution ? ">= n/2 - slack = " + cell(0.5 * dim - slack)
                                                        : "|rate| <= " + cell(slack));
    }
    const double tol = cfg.real("mass_tol");
    out.check("mass", worst_mass <= tol, cell(worst_mass), "|mass - 1| <= " + cell(tol));
    out.notes.push_back("square-root data: the verdict for the pairing series is \"" + r.verdict +
                        "\"; for sqrt(delta) the successive differences shrink by about 2^{n/2} per step");
  } else {
    for (const auto& s : r.series) {
      out.check("cauchy[" + s.test + ", t=" + cell(s.t) + "]", s.cauchy, cell(s.contraction),
                "contraction >= " + cell(a.min_contraction));
      if (s.oracle) {
        const double tol = cfg.real("oracle_tol");
        out.check("oracle[" + s.test + ", t=" + cell(s.t) + "]", s.oracle_gap <= tol * std::max(1.0, std::abs(*s.oracle)),
                  cell(s.oracle_gap), "<= " + cell(tol) + " max(1, |oracle|)");
      }
    }
    out.notes.push_back("verdict: " + r.verdict);
  }
  return out;
}

}  // namespace colombeau::app
