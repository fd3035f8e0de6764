#include <doctest.h>

#include <cmath>
#include <numbers>

#include "colombeau/convergence_lab.hpp"
#include "colombeau/free_propagator.hpp"
#include "colombeau/norms.hpp"

using namespace colombeau;
using std::numbers::pi;

namespace {

Point at(double x, double y = 0.0) { return Point(x, y); }

CoefficientNet free_coefficients() {
  CoefficientNet k;
  k.c = {CoefficientFamily::constant(1.0)};
  k.c0 = 1.0;
  return k;
}

CoherenceSetup small_coherence() {
  CoherenceSetup s;
  s.g0 = [](const Point& x) { return std::exp(Complex(-x.squaredNorm(), x(0))); };
  s.coeffs = free_coefficients();
  s.rho = Mollifier::cauchy_power(1, 4.0);
  s.eps = EpsGrid::dyadic(0, 5);
  s.T = 0.25;
  s.grid = Grid(1, 8.0, 1 << 12);
  s.time_steps = 256;
  s.snapshots = 5;
  s.check_reference = false;
  return s;
}

// <e^{it Laplacian} f, psi> by the spectral propagator on a fine box.
Complex spectral_pairing(const std::function<Complex(const Point&)>& f, const TestFunctionSpec& psi, double t) {
  const Grid g(1, 16.0, 1 << 14);
  const auto evolved = free_evolve(Field::sample(g, f), t);
  return pair(evolved, TestFunction(g, psi));
}

}  // namespace

TEST_CASE("mollify_field preserves integrals and smooths toward the data") {
  const Grid g(1, 8.0, 1 << 12);
  const auto u = Field::sample(g, [](const Point& x) { return std::exp(-x.squaredNorm()); });
  const auto rho = Mollifier::cauchy_power(1, 6.0);
  double previous = 1e300;
  for (double e : {0.5, 0.25, 0.125, 0.0625}) {
    const auto m = mollify_field(u, rho, e);
    // The periodic convolution keeps the discrete integral up to the kernel mass outside the box.
    const double kernel_mass = scaled_mollifier(rho, e, g).mass;
    CHECK(integral(m).real() == doctest::Approx(integral(u).real() * kernel_mass).epsilon(1e-12));
    const double gap = norm_l2(m - u);
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK_THROWS_AS(mollify_field(u, rho, 1e-3), ResolutionError);
}

TEST_CASE("zero data cohere trivially") {
  auto s = small_coherence();
  s.g0 = [](const Point&) { return Complex(0.0); };
  s.check_reference = true;
  const auto r = coherence_experiment(s);
  CHECK(r.passes);
  for (const auto& row : r.rows) CHECK(row.sup_h1_diff == 0.0);
  CHECK(r.reference_self_diff == 0.0);
}

TEST_CASE("smooth data converge at the mollification rate") {
  const auto r = coherence_experiment(small_coherence());
  CHECK(r.times.size() == 5);
  CHECK(r.monotone);
  CHECK(r.rate >= 0.9);
  CHECK(r.c1 == 0.0);
  CHECK(r.c2 == doctest::Approx(0.25));
  for (const auto& row : r.rows) {
    CHECK(row.h1_diff.size() == 5);
    CHECK(std::isfinite(row.energy_ratio));
    // Unitary free evolution: the H^1 gap never exceeds the data gap.
    CHECK(row.sup_h1_diff <= row.data_diff * (1 + 1e-9));
  }
}

TEST_CASE("kinked data still converge monotonically") {
  auto s = small_coherence();
  s.g0 = [](const Point& x) { return Complex(std::max(0.0, 1.0 - std::abs(x(0)))); };
  const auto r = coherence_experiment(s);
  CHECK(r.monotone);
  CHECK(r.rate > 0.0);
  MESSAGE("kink rate " << r.rate);
}

TEST_CASE("fitted rates are stable under a shifted eps grid") {
  auto s = small_coherence();
  s.grid = Grid(1, 8.0, 1 << 13);  // resolves the shifted smallest eps
  const double base = coherence_experiment(s).rate;
  s.eps = EpsGrid::scaled_dyadic(0.75, 0, 5);
  const double shifted = coherence_experiment(s).rate;
  CHECK(std::abs(base - shifted) < 0.1);
}

TEST_CASE("an under-resolved reference aborts the experiment") {
  auto s = small_coherence();
  s.g0 = [](const Point& x) { return std::exp(Complex(-x.squaredNorm(), 6.0 * x(0))); };
  s.grid = Grid(1, 8.0, 64);
  s.eps = EpsGrid::dyadic(0, 5);
  s.check_reference = true;
  CHECK_THROWS_AS(coherence_experiment(s), Error);
}

TEST_CASE("Dirac data: solution pairings approach the free fundamental pairing") {
  const auto rho = Mollifier::cauchy_power(1, 4.0);
  AssociationSetup a;
  a.problem.coeffs = free_coefficients();
  a.problem.initial = [rho](double e, const Grid& g) { return scaled_mollifier(rho, e, g).field; };
  a.problem.T = 0.25;
  a.problem.grid.half_width = 8.0;
  a.problem.grid.spacing_per_eps = 0.125;
  a.problem.snapshot_times = {0.25};
  a.tests = {bump(at(0), 1.0), oscillatory_bump(at(0.5), 1.5, 2.0)};
  a.eps = EpsGrid::dyadic(2, 7);
  a.oracle = [](const TestFunctionSpec& psi, double t) {
    // e^{it Laplacian} is symmetric, so <e^{it Laplacian} delta, psi> = (e^{it Laplacian} psi)(0).
    const Grid g(1, 16.0, 1 << 14);
    const auto evolved = free_evolve(Field::sample(g, [&](const Point& x) { return psi(x); }), t);
    return evolved[g.size() / 2];
  };
  const auto r = association_of_solution(a);
  CHECK(r.all_cauchy);
  CHECK(r.verdict == "associated on the tested range");
  for (const auto& s : r.series) {
    REQUIRE(s.oracle.has_value());
    MESSAGE(s.test << " contraction " << s.contraction << " gap " << s.oracle_gap);
    CHECK(s.oracle_gap < 2e-3 * std::abs(*s.oracle) + 1e-4);
  }
}

TEST_CASE("square-root data: pairings vanish while the mass stays one") {
  const auto rho = Mollifier::cauchy_power(1, 4.0);
  AssociationSetup a;
  a.problem.coeffs = free_coefficients();
  a.problem.initial = [rho](double e, const Grid& g) { return sqrt_dirac_data(rho, e, g); };
  a.problem.T = 0.25;
  a.problem.grid.half_width = 32.0;
  a.problem.grid.spacing_per_eps = 0.125;
  a.problem.snapshot_times = {0.0, 0.25};
  a.tests = {bump(at(0), 1.0)};
  a.eps = EpsGrid::dyadic(2, 7);
  const auto r = association_of_solution(a);
  for (const auto& s : r.series) CHECK(std::abs(s.decay_rate - 0.5) < 0.1);
  // Tail mass of c (1+y^2)^{-2} beyond 32/eps is at most (2c/3) 128^{-3} < 1e-6.
  for (const auto& row : r.masses) {
    for (double m : row) CHECK(m == doctest::Approx(1.0).epsilon(1e-6));
  }
  // The differences shrink by sqrt(2) per dyadic step: below the 1.5 contraction threshold.
  CHECK_FALSE(r.all_cauchy);
  CHECK(r.verdict == "no association detected at tolerance");

  a.quantity = PairingQuantity::density;
  const auto d = association_of_solution(a);
  CHECK(d.series[0].values.back().real() == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("smooth data: the limit is the classical pairing") {
  const auto rho = Mollifier::cauchy_power(1, 6.0);
  const auto g0 = [](const Point& x) { return std::exp(Complex(-x.squaredNorm(), x(0))); };
  AssociationSetup a;
  a.problem.coeffs = free_coefficients();
  a.problem.initial = [&](double e, const Grid& g) { return mollify_field(Field::sample(g, g0), rho, e); };
  a.problem.T = 0.25;
  a.problem.grid.half_width = 8.0;
  a.problem.grid.points = 1 << 12;
  a.problem.time_steps = 512;
  a.problem.snapshot_times = {0.25};
  a.tests = {bump(at(0.2), 1.5)};
  a.eps = EpsGrid::dyadic(0, 5);
  a.oracle = [&](const TestFunctionSpec& psi, double t) { return spectral_pairing(g0, psi, t); };
  const auto r = association_of_solution(a);
  CHECK(r.all_cauchy);
  CHECK(r.series[0].oracle_gap < 1e-4);
  CHECK_THROWS_AS(association_of_solution([&] {
                    auto b = a;
                    b.problem.snapshot_times.clear();
                    return b;
                  }()),
                  PreconditionError);
}
