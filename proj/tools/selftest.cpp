#include <cmath>
#include <functional>
#include <numbers>

#include "colombeau/colombeau.hpp"
#include "experiments.hpp"

namespace colombeau::app {

namespace {

Point at(double x, double y = 0.0) { return Point(x, y); }

struct Suite {
  ExperimentResult& out;

  void near(const std::string& name, const std::function<double()>& measure, double expected, double tol) {
    try {
      const double v = measure();
      out.check(name, std::abs(v - expected) <= tol, cell(v), cell(expected) + " +- " + cell(tol));
    } catch (const std::exception& e) {
      out.check(name, false, "exception", cell(expected), e.what());
    }
  }
  void holds(const std::string& name, const std::function<bool()>& pred, const std::string& what) {
    try {
      const bool ok = pred();
      out.check(name, ok, ok ? "true" : "false", what);
    } catch (const std::exception& e) {
      out.check(name, false, "exception", what, e.what());
    }
  }
};

}  // namespace

ExperimentResult run_selftest(const Config&, const RunContext& ctx) {
  ExperimentResult out;
  Stopwatch clock;
  Suite s{out};
  const double pi = std::numbers::pi;
  const Grid g1(1, 1.0, 256);

  s.near("norm_l2(0)", [&] { return norm_l2(Field::zeros(g1)); }, 0, 0);
  s.near("norm_l2(1) on [-1,1)", [&] { return norm_l2(Field::constant(g1, 1.0)); }, std::sqrt(2.0), 1e-14);
  s.near("norm_hk(1, k=3) = sqrt(volume)", [&] { return norm_hk(Field::constant(g1, 1.0), 3); }, std::sqrt(2.0), 1e-12);
  s.near("norm_hk(u, 0) = norm_l2(u)", [&] {
    const Field u = Field::sample(g1, [](const Point& x) { return std::exp(-4 * x(0) * x(0)); });
    return norm_hk(u, 0) - norm_l2(u);
  }, 0, 1e-13);
  s.near("derivative(1) = 0", [&] { return norm_linf(derivative(Field::constant(g1, 1.0), 0, 1)); }, 0, 1e-12);
  s.near("derivative(e^{3 i pi x}) = 3 i pi u", [&] {
    const Field u = Field::sample(g1, [](const Point& x) { return std::exp(Complex(0, 3 * std::numbers::pi * x(0))); });
    return norm_linf(derivative(u, 0, 1) - Complex(0, 3 * pi) * u);
  }, 0, 1e-10);
  s.near("pair(0, psi) = 0", [&] { return std::abs(pair(Field::zeros(g1), TestFunction(g1, bump(at(0), 0.5)))); }, 0, 0);
  s.near("pair(1, psi) = dx sum psi", [&] {
    const TestFunction psi(g1, bump(at(0), 0.5));
    return std::abs(pair(Field::constant(g1, 1.0), psi) - psi.integral());
  }, 0, 1e-15);

  const Mollifier rho = Mollifier::poisson(1);
  const Grid g8(1, 8.0, 1024);
  s.near("rho_1 samples rho", [&] {
    const auto m = scaled_mollifier(rho, 1.0, g8);
    double worst = 0;
    for (Eigen::Index i = 0; i < g8.size(); ++i) worst = std::max(worst, std::abs(m.field[i] - rho(std::abs(g8.point(i)(0)))));
    return worst;
  }, 0, 1e-15);
  s.near("constant net: slope 0", [&] {
    const EpsGrid eps = EpsGrid::dyadic(1, 6);
    return classify_moderate(ScalarNet(eps, std::vector<double>(eps.size(), 3.0))).slope;
  }, 0, 1e-12);
  s.holds("eps^5 g is negligible_up_to(4)", [&] {
    const EpsGrid eps = EpsGrid::dyadic(1, 6);
    std::vector<double> v;
    for (double e : eps) v.push_back(2 * std::pow(e, 5));
    const auto f = classify_negligible(ScalarNet(eps, v), 4);
    return f.verdict.kind == VerdictKind::negligible_up_to && f.verdict.order == 4;
  }, "verdict negligible_up_to(4)");
  s.holds("eps g is not negligible_up_to(4)", [&] {
    const EpsGrid eps = EpsGrid::dyadic(1, 6);
    std::vector<double> v;
    for (double e : eps) v.push_back(e);
    return classify_negligible(ScalarNet(eps, v), 4).verdict.kind != VerdictKind::negligible_up_to;
  }, "verdict is not negligible_up_to(4)");
  s.holds("time-independent c passes the log-type test", [&] {
    CoefficientNet c{{CoefficientFamily::smoothed_jump(1, 2, 0)}, CoefficientFamily::constant(0), 1};
    const auto a = audit_log_type(c, EpsGrid::dyadic(1, 6), [](double) { return Grid(1, 2.0, 64); }, 1.0);
    return a.passes && a.c_fit.log_coefficient == 0;
  }, "passes with B = 0");
  s.near("log ramp: B ~ 1", [&] {
    CoefficientNet c{{CoefficientFamily::log_ramp(2, 1)}, CoefficientFamily::constant(0), 1};
    const auto a = audit_log_type(c, EpsGrid::dyadic(2, 9), [](double e) { return Grid(1, 2.0, points_for_spacing(2.0, e / 8)); }, 1.0);
    return a.passes ? a.c_fit.log_coefficient : -1.0;
  }, 1.0, 0.05);

  s.holds("mollify(delta) = rho_eps", [&] {
    const Field h = mollify_measure(Measure::dirac(1), rho, 0.25, g8);
    return h.values() == scaled_mollifier(rho, 0.25, g8).field.values();
  }, "bitwise equal");
  s.near("mass of mollified two-point measure", [&] {
    return integral(mollify_measure(Measure::two_point(1, at(-1), at(1)), Mollifier::cauchy_power(1, 6), 0.125, g8)).real();
  }, 1.0, 1e-6);
  s.near("sqrt_root(4) = 2", [&] {
    return norm_linf(sqrt_root(Field::constant(g1, 4.0)) - Field::constant(g1, 2.0));
  }, 0, 0);
  s.near("squaring round trip", [&] {
    const Field h = mollify_measure(Measure::dirac(1), rho, 0.25, g8);
    const Field phi = sqrt_root(h);
    return norm_linf(phi * phi - h) / norm_linf(h);
  }, 0, 1e-14);
  s.holds("uniform measure: inf over K positive", [&] {
    const Grid g(1, 4.0, 4096);
    for (double e : EpsGrid::dyadic(1, 6)) {
      if (!(lower_bound_check(mollify_measure(Measure::uniform(1, -1, 1), rho, e, g), Measure::uniform(1, -1, 1), rho, e, 2.0).measured_inf > 0)) return false;
    }
    return true;
  }, "inf_K h_eps > 0 for every eps");
  s.near("cutoff index j(0.3)", [&] { return CutoffFamily::index(0.3); }, 1, 0);
  s.near("cutoff index j(1)", [&] { return CutoffFamily::index(1.0); }, 0, 0);
  s.near("delta pairing -> psi(0)", [&] {
    const Grid g(1, 4.0, 1 << 14);
    return pair(scaled_mollifier(Mollifier::cauchy_power(1, 6), 1.0 / 256, g).field, TestFunction(g, bump(at(0), 1.0))).real();
  }, 1.0, 1e-3);
  s.near("odd pairing of the two-point mollification", [&] {
    const Grid g(1, 4.0, 1 << 12);
    const Field h = mollify_measure(Measure::two_point(1, at(-1), at(1)), rho, 1.0 / 64, g);
    return pair(h, TestFunction(g, odd_bump(at(0), 2.0))).real();
  }, 0, 1e-12);

  CoefficientNet unit{{CoefficientFamily::constant(1)}, CoefficientFamily::constant(0), 1};
  s.near("c = 1: three-point Laplacian", [&] {
    const Grid g(1, 1.0, 16);
    const SparseMatrix A = build_operator(unit, 0.5, g, 0);
    const double h2 = 1.0 / (g.spacing() * g.spacing());
    return std::abs(A.coeff(3, 2) - h2) + std::abs(A.coeff(3, 3) + 2 * h2) + std::abs(A.coeff(3, 4) - h2) +
           std::abs(A.coeff(0, 15) - h2);
  }, 0, 1e-9);
  s.near("divergence form annihilates constants", [&] {
    CoefficientNet c{{CoefficientFamily::smoothed_jump(2, 3, 0)}, CoefficientFamily::constant(0), 1};
    const Grid g(1, 2.0, 128);
    return (build_operator(c, 0.1, g, 0) * Eigen::VectorXd::Ones(g.size())).cwiseAbs().maxCoeff();
  }, 0, 1e-9);
  s.near("constant V: u = e^{i v0 t}", [&] {
    CauchyProblem p;
    p.coeffs = {{CoefficientFamily::smoothed_jump(1, 2, 0)}, CoefficientFamily::constant(0.7), 1};
    p.initial = [](double, const Grid& g) { return Field::constant(g, 1.0); };
    p.T = 1.0;
    p.time_steps = 200;
    p.grid.points = 64;
    p.grid.half_width = 2.0;
    const auto r = solve(p, 0.1);
    const Field& u = r.final_state();
    // Crank-Nicolson phase of a constant: ((1 + i v dt/2) / (1 - i v dt/2))^N.
    const Complex z(0, 0.7 * r.dt / 2);
    return norm_linf(u - Field::constant(u.grid(), std::pow((1.0 + z) / (1.0 - z), 200)));
  }, 0, 1e-12);
  s.near("zero data: energy lhs = 0", [&] {
    CauchyProblem p;
    p.coeffs = unit;
    p.initial = [](double, const Grid& g) { return Field::zeros(g); };
    p.T = 0.1;
    p.grid.points = 64;
    const auto r = solve(p, 0.5);
    return energy_audit(r, p, 0.5).lhs;
  }, 0, 0);
  s.holds("q = 0 perturbation is flagged", [&] {
    CauchyProblem p;
    p.coeffs = unit;
    p.initial = [](double, const Grid& g) { return Field::sample(g, [](const Point& x) { return std::exp(-x.squaredNorm()); }); };
    p.T = 0.1;
    p.grid.points = 128;
    const auto w = [](const Grid& g) { return Field::sample(g, [](const Point& x) { return std::exp(-x.squaredNorm()); }); };
    return !uniqueness_probe(p, EpsGrid::dyadic(1, 6), 0, w).passes;
  }, "probe fails");
  s.near("identical data: difference 0", [&] {
    CauchyProblem p;
    p.coeffs = unit;
    p.initial = [](double, const Grid& g) { return Field::sample(g, [](const Point& x) { return std::exp(-x.squaredNorm()); }); };
    p.T = 0.1;
    p.grid.points = 128;
    const auto u = uniqueness_probe(p, EpsGrid::dyadic(1, 6), 6, [](const Grid& g) { return Field::zeros(g); });
    double worst = 0;
    for (const auto& row : u.rows) worst = std::max(worst, row.difference);
    return worst;
  }, 0, 0);

  const Grid g16(1, 16.0, 1024);
  const Field packet = Field::sample(g16, [](const Point& x) { return std::exp(Complex(-x.squaredNorm(), x(0))); });
  s.near("free evolution at t = 0 is the identity", [&] { return norm_linf(free_evolve(packet, 0.0) - packet); }, 0, 1e-14);
  s.near("plane wave e^{ikx} -> e^{i(kx - k^2 t)}", [&] {
    const double k = 4 * pi / 16;
    const Field u = Field::sample(g16, [&](const Point& x) { return std::exp(Complex(0, k * x(0))); });
    return norm_linf(free_evolve(u, 0.3) - Complex(std::polar(1.0, -k * k * 0.3)) * u);
  }, 0, 1e-12);
  s.near("mass of 2 u0 = 4", [&] { return density_snapshot(Complex(2.0 / norm_l2(packet)) * packet, 0, 1).mass; }, 4, 1e-12);
  s.near("mass of 0 = 0", [&] { return density_snapshot(Field::zeros(g16), 0, 1).mass; }, 0, 0);
  s.near("zero data: CN and spectral both 0", [&] { return cross_validate_cn(Field::zeros(g16), 0.5, 10).error; }, 0, 0);
  s.near("t = 0 density pairing -> psi(0)", [&] {
    const Mollifier r4 = Mollifier::cauchy_power(1, 4);
    const Grid g(1, 4.0, 1 << 14);
    const Field u = sqrt_dirac_data(r4, 1.0 / 256, g);
    return pair_density(u.modulus_squared(), TestFunction(g, bump(at(0), 1.0)));
  }, 1.0, 2e-2);
  s.near("coherence: zero data, zero differences", [&] {
    CoherenceSetup c;
    c.g0 = [](const Point&) { return Complex(0); };
    c.coeffs = unit;
    c.eps = EpsGrid::dyadic(0, 5);
    c.grid = Grid(1, 2.0, 1024);
    c.check_reference = false;
    double worst = 0;
    for (const auto& row : coherence_experiment(c).rows) worst = std::max(worst, row.sup_h1_diff);
    return worst;
  }, 0, 0);
  clock.lap("suite", out);
  (void)ctx;
  return out;
}

}  // namespace colombeau::app
