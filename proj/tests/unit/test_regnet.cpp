#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "colombeau/asymptotics.hpp"
#include "colombeau/coefficients.hpp"
#include "colombeau/eps_net.hpp"
#include "colombeau/mollifier.hpp"
#include "colombeau/net_io.hpp"
#include "colombeau/norms.hpp"
#include "colombeau/quadrature.hpp"
#include "colombeau/spectral.hpp"

using namespace colombeau;
using std::numbers::pi;

namespace {

ScalarNet power_net(const EpsGrid& eps, double a, double scale = 1.0) {
  return ScalarNet::generate(eps, [&](double e) { return scale * std::pow(e, -a); });
}

Field mollify(const Field& g, const Mollifier& rho, double eps) {
  return periodic_convolve(g, offset_kernel(g.grid(), [&](double r) { return rho.scaled(r, eps); }));
}

}  // namespace

TEST_CASE("eps grids enforce their invariants") {
  CHECK_THROWS_AS(EpsGrid({0.5, 0.25, 0.125}), PreconditionError);
  CHECK_THROWS_AS(EpsGrid({0.5, 0.25, 0.3, 0.1, 0.05, 0.01}), PreconditionError);
  CHECK_THROWS_AS(EpsGrid({1.5, 0.25, 0.2, 0.1, 0.05, 0.01}), PreconditionError);
  CHECK_THROWS_AS(EpsGrid({0.5, 0.25, 0.2, 0.1, 0.05, 0.0}), PreconditionError);
  const auto d = EpsGrid::standard();
  CHECK(d.size() == 8);
  CHECK(d[0] == 0.25);
  CHECK(d.smallest() == std::ldexp(1.0, -9));
  CHECK(EpsGrid::half_dyadic(0, 5)[1] == doctest::Approx(std::sqrt(0.5)));
  CHECK(EpsGrid::scaled_dyadic(3.0, 2, 7)[0] == 0.75);
}

TEST_CASE("nets check item counts and grids") {
  const auto eps = EpsGrid::dyadic(1, 6);
  CHECK_THROWS_AS(ScalarNet(eps, {1.0, 2.0}), PreconditionError);
  std::vector<Field> mixed;
  for (int i = 0; i < 6; ++i) mixed.push_back(Field::zeros(Grid(1, i == 3 ? 2.0 : 1.0, 8)));
  CHECK_THROWS_AS(FieldNet(eps, mixed), GridError);
  const auto sq = power_net(eps, 1.0).map([](double v) { return v * v; });
  CHECK(sq[5] == doctest::Approx(4096.0));
}

TEST_CASE("cauchy mollifier normalization and scaling") {
  const auto rho = Mollifier::poisson(1);
  CHECK(rho.normalization() == doctest::Approx(1.0 / pi).epsilon(1e-14));
  // Oracle: quadrature of (1 + x^2)^{-1} on [-1000, 1000] plus the 2/1000 tail.
  const double raw = integrate_interval([](double x) { return 1.0 / (1.0 + x * x); }, -1000.0, 1000.0, 20000);
  CHECK(std::abs(raw + 2e-3 - pi) < 1e-6);
  CHECK(rho.scaled(0.0, 0.1) == doctest::Approx(10.0 / pi).epsilon(1e-14));

  const auto rho2 = Mollifier::poisson(2);
  // c (1+|x|^2)^{-3/2} in the plane: c = 1 / (2 pi).
  CHECK(rho2.normalization() == doctest::Approx(1.0 / (2 * pi)).epsilon(1e-14));
  CHECK_THROWS_AS(Mollifier::cauchy_power(2, 2.0), PreconditionError);
}

TEST_CASE("scaled_mollifier examples") {
  const auto rho = Mollifier::poisson(1);
  const Grid g(1, 4.0, 1 << 10);
  const auto one = scaled_mollifier(rho, 1.0, g);
  for (Eigen::Index i = 0; i < g.size(); i += 37) {
    CHECK(one.field[i].real() == rho(std::abs(g.point(i)(0))));
  }

  const Grid fine(1, 4.0, 1 << 12);
  CHECK(norm_linf(scaled_mollifier(rho, 0.1, fine).field) == doctest::Approx(10.0 / pi).epsilon(1e-12));

  // Box [-20, 20): the missing tail mass is 1 - (2/pi) atan(20 / 0.2).
  const Grid box(1, 20.0, 4096);
  const auto s = scaled_mollifier(rho, 0.2, box);
  const double tail = 1.0 - 2.0 / pi * std::atan(20.0 / 0.2);
  CHECK(s.mass >= 0.99);
  CHECK(s.mass <= 1.01);
  CHECK(std::abs(s.mass - (1.0 - tail)) < 1e-4);
}

TEST_CASE("scaled_mollifier names the minimal grid on under-resolution") {
  const Grid g(1, 4.0, 64);
  try {
    scaled_mollifier(Mollifier::poisson(1), 0.1, g);
    FAIL("expected a resolution error");
  } catch (const ResolutionError& e) {
    CHECK(e.minimal_points() == 1024);
    CHECK(std::string(e.what()).find("M=1024") != std::string::npos);
  }
  CHECK_THROWS_AS(scaled_mollifier(Mollifier::poisson(2), 0.5, g), GridError);
}

TEST_CASE("mollifier validation") {
  const auto v = validate(Mollifier::poisson(1));
  CHECK(v.mass_ok);
  CHECK(v.positive);
  CHECK(v.monotone);
  CHECK(v.tail_ok);
  // c (1 + r^2)^{-1} r^2 tends to c = 1/pi < 1: a unit tail constant is impossible for a unit-mass profile.
  CHECK_FALSE(v.unit_tail_ok);
  CHECK(validate(Mollifier::cauchy_power(2, 5.0)).mass_ok);

  const auto custom = Mollifier::custom(1, "inverse_cube", [](double r) { return std::pow(1.0 + r, -3.0); }, 3.0);
  // Oracle: int (1+|x|)^{-3} dx over R = 1, so the profile is already normalized.
  CHECK(custom.normalization() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(validate(custom).mass_ok);
  CHECK(custom.tail_constant() == doctest::Approx(std::pow(2.0, -3)).epsilon(1e-6));
}

TEST_CASE("sqrt of the mollifier") {
  const auto rho = Mollifier::cauchy_power(1, 4.0);
  CHECK(rho.sqrt_integrable());
  CHECK_FALSE(Mollifier::poisson(1).sqrt_integrable());
  const double oracle = integrate_interval([&](double x) { return std::sqrt(rho(std::abs(x))); }, -200.0, 200.0, 4000);
  // Remaining tail of sqrt(c) (1+x^2)^{-1} beyond 200: about 2 sqrt(c) / 200.
  CHECK(std::abs(rho.sqrt_l1_norm() - oracle - 2 * std::sqrt(rho.normalization()) / 200) < 1e-6);
}

TEST_CASE("classify_moderate examples") {
  const auto eps = EpsGrid::standard();
  const auto rho = Mollifier::poisson(1);
  const Grid g(1, 2.0, 1 << 14);
  const auto net = FieldNet::generate(eps, [&](double e) { return scaled_mollifier(rho, e, g).field; });
  const auto sup = classify_moderate(net, Seminorm::linf());
  CHECK(std::abs(sup.slope - 1.0) < 0.1);
  CHECK(sup.verdict.kind == VerdictKind::moderate);
  CHECK(sup.verdict.order == 1);

  const auto d1 = net.map([](const Field& u) { return norm_linf(derivative(u, 0, 1)); });
  CHECK(std::abs(classify_moderate(d1).slope - 2.0) < 0.15);

  const auto fixed = Field::sample(g, [](const Point& x) { return std::exp(-x.squaredNorm()); });
  const auto flat = FieldNet::generate(eps, [&](double) { return fixed; });
  const auto c = classify_moderate(flat, Seminorm::hk(2));
  CHECK(std::abs(c.slope) < 1e-12);
  CHECK(c.verdict.describe() == "moderate(0)");
}

TEST_CASE("zero seminorms are excluded and few points are inconclusive") {
  const auto eps = EpsGrid::dyadic(1, 6);
  ScalarNet net(eps, {1.0, 0.0, 0.0, 0.0, 2.0, 3.0});
  const auto fit = classify_moderate(net);
  CHECK(fit.points_used == 3);
  CHECK(fit.verdict.kind == VerdictKind::inconclusive);
}

TEST_CASE("classify_negligible examples") {
  const auto eps = EpsGrid::standard();
  const auto n5 = classify_negligible(power_net(eps, -5.0, 0.7), 4);
  CHECK(n5.verdict.kind == VerdictKind::negligible_up_to);
  CHECK(n5.verdict.order == 4);
  const auto n1 = classify_negligible(power_net(eps, -1.0, 0.7), 4);
  CHECK(n1.verdict.kind != VerdictKind::negligible_up_to);
  CHECK(n1.slope == doctest::Approx(-1.0));
  CHECK_THROWS_AS(classify_negligible(power_net(eps, 1.0), 0), PreconditionError);
}

TEST_CASE("two admissible mollifiers give negligible-to-first-order differences") {
  const auto eps = EpsGrid::dyadic(2, 7);
  const Grid g(1, 8.0, 1 << 14);
  const auto bump_data = Field::sample(g, [](const Point& x) { return std::exp(-x.squaredNorm()); });
  const auto a = Mollifier::cauchy_power(1, 4.0);
  const auto b = Mollifier::cauchy_power(1, 6.0);
  const auto net = FieldNet::generate(eps, [&](double e) { return mollify(bump_data, a, e) - mollify(bump_data, b, e); });
  const auto fit = classify_negligible(net, Seminorm::l2(), 1);
  MESSAGE("measured slope of the mollifier difference: " << fit.slope);
  CHECK(fit.slope <= -0.9);
  CHECK(fit.verdict.kind == VerdictKind::negligible_up_to);
}

TEST_CASE("check_log_type examples") {
  const auto eps = EpsGrid::standard();
  const auto zero = check_log_type(ScalarNet::generate(eps, [](double) { return 0.0; }));
  CHECK(zero.passes);
  CHECK(zero.log_coefficient == 0.0);

  const auto log_law = check_log_type(ScalarNet::generate(eps, [](double e) { return std::log(1.0 / e); }));
  CHECK(log_law.passes);
  CHECK(log_law.log_coefficient == doctest::Approx(1.0));

  const auto power = check_log_type(ScalarNet::generate(eps, [](double e) { return std::pow(e, -0.5); }));
  CHECK_FALSE(power.passes);
  CHECK(power.power_preferred);
  CHECK(power.power_relative_residual < power.relative_residual);
}

TEST_CASE("log-type audit of closed-form coefficient families") {
  const auto eps = EpsGrid::standard();
  auto grid_for = [](double e) { return Grid(1, 4.0, points_for_spacing(4.0, e / 4)); };
  CoefficientNet log_c;
  log_c.c = {CoefficientFamily::log_ramp(2.0, 1.0)};
  const auto good = audit_log_type(log_c, eps, grid_for, 1.0, 5);
  CHECK(good.passes);
  // sup_x (2/pi) atan(x / eps) on the box is just below 1.
  CHECK(std::abs(good.c_fit.log_coefficient - 1.0) < 0.02);

  CoefficientNet power_c;
  power_c.c = {CoefficientFamily::power_ramp(2.0, 1.0, 0.5)};
  CHECK_FALSE(audit_log_type(power_c, eps, grid_for, 1.0, 5).passes);

  CoefficientNet frozen;
  frozen.c = {CoefficientFamily::smoothed_jump(1.0, 3.0, 0.0)};
  const auto still = audit_log_type(frozen, eps, grid_for, 1.0, 5);
  CHECK(still.passes);
  CHECK(still.c_fit.log_coefficient == 0.0);
}

TEST_CASE("property: moderate slope recovers the exponent") {
  const auto eps = EpsGrid::standard();
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int a = 0; a <= 3; ++a) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto fit = classify_moderate(power_net(eps, a, scale(rng)));
      CHECK(std::abs(fit.slope - a) < 0.05);
      CHECK(fit.verdict.order == a);
    }
  }
}

TEST_CASE("property: negligible certificates imply moderateness") {
  const auto eps = EpsGrid::standard();
  for (double p : {1.0, 2.5, 4.0, 7.0}) {
    const auto net = power_net(eps, -p, 3.0);
    for (int q = 1; q <= 6; ++q) {
      const auto neg = classify_negligible(net, q);
      if (neg.verdict.kind == VerdictKind::negligible_up_to) {
        CHECK(classify_moderate(net).verdict.kind == VerdictKind::moderate);
        CHECK(q <= p + 0.1);
      }
    }
  }
}

TEST_CASE("property: rescaling identity on grid nodes") {
  for (int dim : {1, 2}) {
    const auto rho = Mollifier::cauchy_power(dim, dim + 2.0);
    const Grid g(dim, 2.0, dim == 1 ? 512 : 128);
    for (double e : {1.0, 0.5, 0.25}) {
      const auto s = scaled_mollifier(rho, e, g);
      double worst = 0;
      for (Eigen::Index i = 0; i < g.size(); ++i) {
        const double direct = std::pow(e, -dim) * rho.normalization() *
                              std::pow(1.0 + g.point(i).squaredNorm() / (e * e), -(dim + 2.0) / 2);
        worst = std::max(worst, std::abs(s.field[i].real() - direct) / direct);
      }
      CHECK(worst < 1e-12);
    }
  }
}

TEST_CASE("net serialization round-trips") {
  const auto dir = std::filesystem::temp_directory_path() / "colombeau_net_io_test";
  std::filesystem::remove_all(dir);
  const auto eps = EpsGrid::dyadic(1, 6);
  const Grid g(2, 3.0, 16);
  const auto net = FieldNet::generate(
      eps, [&](double e) { return Field::sample(g, [&](const Point& x) { return std::exp(Complex(-x.squaredNorm() / e, e * x(1))); }); },
      "gauss");
  save_net(net, dir / "field");
  const auto back = load_net(dir / "field");
  CHECK(back.label() == "gauss");
  CHECK(back.eps().values() == eps.values());
  CHECK(back[0].grid() == g);
  for (std::size_t i = 0; i < net.size(); ++i) CHECK(back[i].values() == net[i].values());

  const auto scalars = power_net(eps, 1.0 / 3.0);
  save_scalar_net(scalars, dir / "scalar");
  const auto sback = load_scalar_net(dir / "scalar");
  CHECK(sback.items() == scalars.items());
  CHECK_THROWS(load_net(dir / "missing"));
  std::filesystem::remove_all(dir);
}
