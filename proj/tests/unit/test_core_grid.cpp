#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "colombeau/mollifier.hpp"
#include "colombeau/norms.hpp"
#include "colombeau/quadrature.hpp"
#include "colombeau/spectral.hpp"
#include "colombeau/test_function.hpp"

using namespace colombeau;
using std::numbers::pi;

namespace {

Field random_field(const Grid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Field::Values v(g.size());
  for (auto& x : v) x = Complex(n(rng), n(rng));
  return Field(g, v);
}

// Smooth periodic-friendly packet, decays to ~1e-16 at the box edge.
Field packet(const Grid& g) {
  return Field::sample(g, [](const Point& x) {
    return std::exp(Complex(-x.squaredNorm(), 2.0 * x(0)));
  });
}

}  // namespace

TEST_CASE("grid validates its parameters") {
  CHECK_THROWS_AS(Grid(3, 1.0, 64), GridError);
  CHECK_THROWS_AS(Grid(1, 0.0, 64), GridError);
  CHECK_THROWS_AS(Grid(1, 1.0, 100), GridError);
  CHECK_THROWS_AS(Grid(1, 1.0, 4), GridError);
  const Grid g(2, 1.0, 8);
  CHECK(g.size() == 64);
  CHECK(g.spacing() == 0.25);
  CHECK(g.cell_volume() == 0.0625);
  CHECK(g.point(g.ravel(3, 5))(0) == doctest::Approx(-0.25));
  CHECK(g.point(g.ravel(3, 5))(1) == doctest::Approx(0.25));
  CHECK(g.unravel(g.ravel(6, 1)) == std::array<Eigen::Index, 2>{6, 1});
  CHECK(points_for_spacing(4.0, 0.1) == 128);
}

TEST_CASE("grid functions reject mismatched sizes and non-finite values") {
  const Grid g(1, 1.0, 8);
  CHECK_THROWS_AS(Field(g, Field::Values::Zero(7)), GridError);
  Field::Values v = Field::Values::Zero(8);
  v(2) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(Field(g, v), GridError);
  CHECK_THROWS_AS(Field::zeros(g) + Field::zeros(Grid(1, 2.0, 8)), GridError);
}

TEST_CASE("norm_l2 of sin(pi x) on [-1,1) is 1") {
  const Grid g(1, 1.0, 256);
  const auto u = Field::sample(g, [](const Point& x) { return std::sin(pi * x(0)); });
  CHECK(norm_l2(u) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(norm_hk(u, 0) == doctest::Approx(norm_l2(u)).epsilon(1e-12));
}

TEST_CASE("norm_hk matches closed forms") {
  const Grid g(1, 1.0, 256);
  const auto s = Field::sample(g, [](const Point& x) { return std::sin(pi * x(0)); });
  // integral of sin^2 is 1 and of (pi cos)^2 is pi^2.
  CHECK(std::abs(norm_hk(s, 1) - std::sqrt(1.0 + pi * pi)) < 1e-6);
  CHECK(std::abs(norm_hk(s, 2) - std::sqrt(1.0 + pi * pi + std::pow(pi, 4))) < 1e-6);

  const auto c = Field::constant(g, Complex(3.0, -4.0));
  for (int k = 0; k <= 4; ++k) CHECK(norm_hk(c, k) == doctest::Approx(5.0 * std::sqrt(2.0)));
  CHECK_THROWS_AS(norm_hk(c, 5), UnsupportedOrder);

  const Grid g2(2, 1.0, 32);
  const auto c2 = Field::constant(g2, Complex(2.0, 0.0));
  CHECK(norm_hk(c2, 3) == doctest::Approx(2.0 * 2.0));
}

TEST_CASE("sobolev_norms agrees with norm_hk") {
  for (int dim : {1, 2}) {
    const Grid g(dim, 6.0, dim == 1 ? 256 : 64);
    const auto u = packet(g);
    SpectralTransform<double> fft(g);
    const auto n = sobolev_norms(u, fft);
    CHECK(n.l2 == doctest::Approx(norm_hk(u, 0)).epsilon(1e-12));
    CHECK(n.h1 == doctest::Approx(norm_hk(u, 1)).epsilon(1e-12));
    CHECK(n.h2 == doctest::Approx(norm_hk(u, 2)).epsilon(1e-12));
  }
}

TEST_CASE("norm_linf examples") {
  const Grid g(1, 1.0, 256);
  CHECK(norm_linf(Field::zeros(g)) == 0.0);
  const auto s = Field::sample(g, [](const Point& x) { return std::sin(pi * x(0)); });
  CHECK(std::abs(norm_linf(s) - 1.0) < 1e-3);

  const Grid fine(1, 4.0, 1 << 12);
  const auto rho = scaled_mollifier(Mollifier::poisson(1), 0.1, fine);
  CHECK(norm_linf(rho.field) == doctest::Approx(10.0 / pi).epsilon(1e-12));
}

TEST_CASE("derivative examples") {
  const Grid g(1, 2.0, 64);
  const auto one = Field::constant(g, 1.0);
  CHECK(norm_linf(derivative(one, 0, 1)) < 1e-12);
  CHECK(norm_linf(derivative(one, 0, 2)) < 1e-12);

  const double L = g.half_width();
  for (int k : {1, 3, 7}) {
    const auto w = Field::sample(g, [&](const Point& x) { return std::exp(Complex(0, k * pi * x(0) / L)); });
    const auto dw = derivative(w, 0, 1);
    const auto expected = Complex(0, k * pi / L) * w;
    CHECK(norm_linf(dw - expected) < 1e-10 * (1 + k * pi / L));
  }

  CHECK_THROWS_AS(derivative(one, 0, 3), UnsupportedOrder);
  CHECK_THROWS_AS(derivative(one, 1, 1), GridError);
}

TEST_CASE("sawtooth derivative is finite with mean slope near one in the interior") {
  const Grid g(1, 1.0, 256);
  const auto saw = Field::sample(g, [](const Point& x) { return x(0); });
  const auto d = derivative(saw, 0, 1);
  CHECK(d.values().allFinite());
  // Oracle: centered finite differences of x over the interior half.
  double spectral = 0, fd = 0;
  int count = 0;
  for (Eigen::Index i = 64; i < 192; ++i) {
    spectral += d[i].real();
    fd += (saw[i + 1].real() - saw[i - 1].real()) / (2 * g.spacing());
    ++count;
  }
  CHECK(fd / count == doctest::Approx(1.0));
  CHECK(std::abs(spectral / count - 1.0) < 0.1);
}

TEST_CASE("mixed partials and W^{k,inf}") {
  const Grid g(2, 6.0, 64);
  const auto u = Field::sample(g, [](const Point& x) { return std::exp(-x.squaredNorm()); });
  // d/dx0 d/dx1 exp(-|x|^2) = 4 x0 x1 exp(-|x|^2); sup over R^2 is 4 * (1/2) e^{-1} = 2/e,
  // attained off the grid, so compare against the closed form at the nodes.
  const auto d = partial(u, 1, 1);
  double node_sup = 0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const Point x = g.point(i);
    node_sup = std::max(node_sup, std::abs(4 * x(0) * x(1) * std::exp(-x.squaredNorm())));
  }
  CHECK(std::abs(norm_linf(d) - node_sup) < 1e-10);
  CHECK(norm_linf(d) <= 2.0 / std::exp(1.0));
  CHECK(norm_wk_inf(u, 0) == doctest::Approx(1.0));
  CHECK(norm_wk_inf(u, 2) >= norm_wk_inf(u, 1));
  CHECK_THROWS_AS(partial(Field::zeros(Grid(1, 1.0, 8)), 0, 1), GridError);
}

TEST_CASE("pair examples") {
  const Grid g(1, 4.0, 1 << 12);
  const TestFunction psi(g, bump(Point::Zero(), 1.0));
  CHECK(std::abs(pair(Field::zeros(g), psi)) == 0.0);
  CHECK(pair(Field::constant(g, 1.0), psi).real() == doctest::Approx(psi.integral()).epsilon(1e-14));

  // Oracle: the same pairing by Gauss-Legendre quadrature of rho_eps psi on [-1, 1].
  const auto rho = Mollifier::poisson(1);
  const double eps = 0.05;
  const auto sample = scaled_mollifier(rho, eps, g);
  const double discrete = pair(sample.field, psi).real();
  const auto spec = bump(Point::Zero(), 1.0);
  const double oracle = integrate_interval(
      [&](double x) { return rho.scaled(std::abs(x), eps) * spec(Point(x, 0.0)); }, -1.0, 1.0, 512);
  CHECK(std::abs(discrete - oracle) < 1e-8);
  // The heavy Poisson tail leaves an O(eps) deficit against psi(0) = 1.
  CHECK(discrete < 1.0);
  CHECK(discrete > 1.0 - 2 * eps);

  CHECK_THROWS_AS(pair(Field::zeros(Grid(1, 8.0, 64)), psi), GridError);
}

TEST_CASE("test functions must fit inside the box") {
  const Grid g(1, 2.0, 64);
  CHECK_THROWS_AS(TestFunction(g, bump(Point(1.5, 0.0), 1.0)), GridError);
  CHECK_NOTHROW(TestFunction(g, bump(Point(0.5, 0.0), 1.0)));
  const auto spec = parse_test_function("oscillatory(0.5, 1, 3)", 1);
  CHECK(spec.name == "oscillatory");
  CHECK(spec(Point(0.5, 0.0)) == doctest::Approx(std::cos(1.5)));
  CHECK_THROWS_AS(parse_test_function("bump(0,1)", 2), PreconditionError);
  CHECK_THROWS_AS(parse_test_function("ramp(0,1)", 1), PreconditionError);
}

TEST_CASE("boundary decay and mass helpers") {
  const Grid g(1, 8.0, 256);
  const auto u = packet(g);
  CHECK(boundary_decay_ratio(u) < 1e-10);
  CHECK(boundary_decay_ratio(Field::constant(g, 1.0)) == 1.0);
  CHECK(mass(u) == doctest::Approx(std::sqrt(pi / 2)).epsilon(1e-12));
  CHECK(integral(Field::constant(g, 2.0)).real() == doctest::Approx(32.0));
}

TEST_CASE("property: norm_hk is monotone in k") {
  std::mt19937_64 rng(11);
  for (int dim : {1, 2}) {
    const Grid g(dim, 3.0, dim == 1 ? 64 : 16);
    for (int trial = 0; trial < 20; ++trial) {
      const auto u = random_field(g, rng);
      for (int k = 1; k <= 4; ++k) CHECK(norm_hk(u, k) >= norm_hk(u, k - 1));
    }
  }
}

TEST_CASE("property: Parseval consistency") {
  std::mt19937_64 rng(12);
  for (int dim : {1, 2}) {
    const Grid g(dim, 2.5, dim == 1 ? 128 : 32);
    for (int trial = 0; trial < 20; ++trial) {
      const auto u = random_field(g, rng);
      CHECK(std::abs(norm_l2(u) - norm_l2_spectral(u)) <= 1e-12 * norm_l2(u));
    }
  }
}

TEST_CASE("property: derivative and pair are linear") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  const Grid g(1, 3.0, 128);
  const TestFunction psi(g, bump(Point(0.3, 0.0), 1.5));
  const TestFunction chi(g, odd_bump(Point(-0.4, 0.0), 1.0));
  for (int trial = 0; trial < 20; ++trial) {
    const auto u = random_field(g, rng);
    const auto v = random_field(g, rng);
    const Complex a(coef(rng), coef(rng)), b(coef(rng), coef(rng));
    for (int order : {1, 2}) {
      const auto lhs = derivative(a * u + b * v, 0, order);
      const auto rhs = a * derivative(u, 0, order) + b * derivative(v, 0, order);
      CHECK(norm_linf(lhs - rhs) <= 1e-12 * (1 + norm_linf(lhs)));
    }
    CHECK(std::abs(pair(a * u + b * v, psi) - (a * pair(u, psi) + b * pair(v, psi))) < 1e-12);
    // Linearity in the test function: pair with psi + chi equals the sum.
    const double ar = a.real(), br = b.real();
    const Field combo = ar * psi.field() + br * chi.field();
    const Complex direct = g.cell_volume() * u.values().cwiseProduct(combo.values()).sum();
    CHECK(std::abs(direct - (ar * pair(u, psi) + br * pair(u, chi))) < 1e-12);
  }
}
