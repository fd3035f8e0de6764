#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "colombeau/measure.hpp"
#include "colombeau/measure_sqrt.hpp"
#include "colombeau/norms.hpp"
#include "colombeau/spectral.hpp"

using namespace colombeau;
using std::numbers::pi;

namespace {

Point at(double x, double y = 0.0) { return Point(x, y); }

FieldNet squares_of(const Measure& mu, const Mollifier& rho, const EpsGrid& eps, const Grid& g) {
  return FieldNet::generate(eps, [&](double e) {
    const Field phi = sqrt_root(mollify_measure(mu, rho, e, g));
    return phi * phi;
  });
}

}  // namespace

TEST_CASE("measures validate and parse") {
  CHECK_THROWS_AS(Measure(1, {{at(0), 0.5}}), PreconditionError);
  CHECK_THROWS_AS(Measure(1, {{at(0), -0.5}, {at(1), 1.5}}), PreconditionError);
  CHECK_THROWS_AS(Measure(1, {}), PreconditionError);
  CHECK_THROWS_AS(Measure::uniform(1, 1.0, -1.0), PreconditionError);

  const auto m = Measure::parse("0.25*dirac(-1) + 0.25*dirac(1) + 0.5*uniform(-0.5,0.5)", 1);
  CHECK(m.atoms().size() == 2);
  CHECK(m.densities().size() == 1);
  CHECK(m.total() == doctest::Approx(1.0));
  CHECK(m.mass_within(0.5) == doctest::Approx(0.5));
  CHECK(m.mass_within(1.0) == doctest::Approx(1.0));
  CHECK(m.central_radius(0.5) == doctest::Approx(0.5).epsilon(1e-9));

  CHECK_THROWS_AS(Measure::parse("dirac(0,1)", 1), PreconditionError);
  CHECK_THROWS_AS(Measure::parse("x*dirac(0)", 1), PreconditionError);
  CHECK_THROWS_AS(Measure::parse("cauchy(1)", 1), PreconditionError);
  CHECK_THROWS_AS(Measure::parse("0.5*dirac(0)", 1), PreconditionError);

  const auto g2 = Measure::parse("gaussian(0.5, 1, -1)", 2);
  CHECK(g2.densities().front().center == at(1, -1));
}

TEST_CASE("measure pairing against closed forms") {
  const auto psi = bump(at(0), 1.0);
  CHECK(Measure::dirac(1).apply(psi) == 1.0);
  CHECK(Measure::two_point(1, at(-1), at(1)).apply(odd_bump(at(0), 2.0)) == doctest::Approx(0.0));
  // Uniform on [-1, 1] against x^2-free bump: oracle is the Riemann sum on a fine grid.
  const auto u = Measure::uniform(1, -1.0, 1.0);
  double riemann = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) riemann += psi(at(-1.0 + (i + 0.5) * 2.0 / n)) * 0.5 * 2.0 / n;
  CHECK(u.apply(psi) == doctest::Approx(riemann).epsilon(1e-9));
  // Gaussian: mass inside one standard deviation.
  CHECK(Measure::gaussian(1, 2.0).mass_within(2.0) == doctest::Approx(std::erf(1 / std::sqrt(2.0))));
  CHECK(Measure::gaussian(2, 1.0).mass_within(1.0) == doctest::Approx(1 - std::exp(-0.5)).epsilon(1e-8));
}

TEST_CASE("mollify_measure examples") {
  const auto rho = Mollifier::poisson(1);
  const Grid g(1, 4.0, 256);
  const auto h = mollify_measure(Measure::dirac(1), rho, 0.25, g);
  CHECK(h.values() == scaled_mollifier(rho, 0.25, g).field.values());

  const auto two = mollify_measure(Measure::two_point(1, at(-1), at(1)), rho, 0.5, g);
  const Eigen::Index origin = 128;
  REQUIRE(g.point(origin)(0) == 0.0);
  CHECK(two[origin].real() == doctest::Approx(2.0 / (5.0 * pi)).epsilon(1e-14));

  // Mass lost outside [-L, L) for delta: 1 - (2/pi) atan(L / eps).
  const Grid wide(1, 64.0, 1 << 14);
  const double eps = 1.0 / 16;
  const auto hd = mollify_measure(Measure::dirac(1), rho, eps, wide);
  const double expected = 2.0 / pi * std::atan(64.0 / eps);
  CHECK(std::abs(wide.cell_volume() * hd.real().sum() - expected) < 1e-6);

  CHECK_THROWS_AS(mollify_measure(Measure::dirac(1), rho, 0.01, g), ResolutionError);
  CHECK_THROWS_AS(mollify_measure(Measure::dirac(2), rho, 0.25, g), GridError);
}

TEST_CASE("mollified densities keep their mass") {
  const auto rho = Mollifier::cauchy_power(1, 6.0);
  const Grid g(1, 32.0, 1 << 13);
  const auto h = mollify_measure(Measure::uniform(1, -1.0, 1.0), rho, 0.1, g);
  CHECK(std::abs(g.cell_volume() * h.real().sum() - 1.0) < 1e-6);
  // Far from the jumps the mollified density is the plateau value 1/2.
  CHECK(h[g.size() / 2].real() == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("sqrt_root examples") {
  const Grid g(1, 4.0, 256);
  const auto two = sqrt_root(Field::constant(g, 4.0));
  CHECK(norm_linf(two - Field::constant(g, 2.0)) == 0.0);

  const auto rho = Mollifier::poisson(1);
  const auto phi = sqrt_root(mollify_measure(Measure::dirac(1), rho, 0.25, g));
  CHECK(phi[128].real() == doctest::Approx(std::sqrt(4.0 / pi)).epsilon(1e-14));

  const auto h = mollify_measure(Measure::two_point(1, at(-1), at(1)), rho, 0.25, g);
  const auto root = sqrt_root(h);
  CHECK(norm_linf(root * root - h) / norm_linf(h) < 1e-14);

  CHECK_THROWS_AS(sqrt_root(Field::zeros(g)), PositivityError);
  CHECK_THROWS_AS(sqrt_root(Field::constant(g, Complex(1.0, 1e-3))), PositivityError);
}

TEST_CASE("lower bound for a point mass") {
  const auto rho = Mollifier::poisson(1);
  const Grid g(1, 4.0, 1 << 13);
  for (double eps : {0.25, 0.125, 0.0625}) {
    const auto h = mollify_measure(Measure::dirac(1), rho, eps, g);
    const auto r = lower_bound_check(h, Measure::dirac(1), rho, eps, 1.0);
    CHECK(r.a_radius == 0.0);
    CHECK(r.a_mass == 1.0);
    CHECK(r.r_k == 1.0);
    CHECK(r.precondition_ok);
    // Closed form inf over [-1, 1] is rho_eps(1) = eps / (pi (eps^2 + 1)).
    CHECK(r.measured_inf == doctest::Approx(eps / (pi * (eps * eps + 1))).epsilon(1e-12));
    CHECK(r.sharp_ok);
    CHECK(r.measured_inf >= r.tail_bound);
    // The halved unit-constant bound eps / 2 sits above the true infimum.
    CHECK(r.paper_bound == doctest::Approx(eps / 2));
    CHECK_FALSE(r.paper_ok);
  }
  const auto sweep = lower_bound_sweep(Measure::dirac(1), rho, EpsGrid::dyadic(2, 7), g, 1.0);
  CHECK(std::abs(sweep.fit.slope - 1.0) < 0.1);
}

TEST_CASE("lower bound for a uniform density is positive and bounded in exponent") {
  const auto rho = Mollifier::poisson(1);
  const Grid g(1, 8.0, 1 << 14);
  const auto mu = Measure::uniform(1, -1.0, 1.0);
  const auto sweep = lower_bound_sweep(mu, rho, EpsGrid::dyadic(2, 7), g, 2.0);
  for (const auto& r : sweep.reports) {
    CHECK(r.measured_inf > 0);
    CHECK(r.sharp_ok);
  }
  CHECK(sweep.fit.slope <= rho.tail_exponent() - 1 + 0.1);
}

TEST_CASE("cutoff dyadic index and plateau") {
  CHECK(CutoffFamily::index(0.3) == 1);
  CHECK(CutoffFamily::index(1.0) == 0);
  CHECK(CutoffFamily::index(0.5) == 1);
  CHECK(CutoffFamily::index(0.25) == 2);
  CHECK(CutoffFamily::index(0.26) == 1);
  CHECK_THROWS_AS(CutoffFamily::index(0.0), PreconditionError);
  for (double e = 1.0; e > 1e-3; e *= 0.77) {
    const int j = CutoffFamily::index(e);
    CHECK(std::ldexp(1.0, -j - 1) < e);
    CHECK(e <= std::ldexp(1.0, -j));
  }

  const CutoffFamily chi;
  CHECK(chi.chi0(0.0) == 1.0);
  CHECK(chi.chi0(1.0) == 1.0);
  CHECK(chi.chi0(2.0) == 0.0);
  CHECK(chi.chi0(1.5) == doctest::Approx(0.5).epsilon(1e-9));
  double prev = 1.0;
  for (double r = 1.0; r <= 2.0; r += 0.01) {
    CHECK(chi.chi0(r) <= prev);
    CHECK(chi.chi0(r) >= 0.0);
    prev = chi.chi0(r);
  }
  CHECK(chi.chi(1, 2.0) == 1.0);
  CHECK(chi.chi(1, 4.0) == 0.0);
}

TEST_CASE("cutoff derivative norms scale dyadically") {
  const CutoffFamily chi;
  for (int dim : {1, 2}) {
    const Grid g(dim, 16.0, dim == 1 ? 8192 : 1024);
    auto norms = [&](int j) {
      const auto c = chi.sample(j, g);
      return std::array<double, 3>{norm_l2(c), norm_l2(partial(c, 1, 0)), norm_l2(partial(c, 2, 0))};
    };
    const auto base = norms(0);
    for (int j = 1; j <= 2; ++j) {
      const auto nj = norms(j);
      for (int gamma = 0; gamma <= 2; ++gamma) {
        const double predicted = std::pow(2.0, (-gamma + 0.5 * dim) * j) * base[gamma];
        CHECK(std::abs(nj[gamma] / predicted - 1.0) < 0.01);
      }
    }
  }
}

TEST_CASE("cutoff_sqrt equals the square root on the plateau") {
  const auto rho = Mollifier::poisson(1);
  const CutoffFamily chi;
  const Grid g(1, 16.0, 1 << 13);
  const auto mu = Measure::two_point(1, at(-0.5), at(0.5));
  const auto c = cutoff_sqrt(mu, rho, chi, 0.3, g);
  CHECK(c.j == 1);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (g.point(i).norm() <= 2.0) CHECK(c.g[i] == c.phi[i]);
    if (g.point(i).norm() >= 4.0) CHECK(c.g[i] == 0.0);
  }
  CHECK(c.phi.values() == sqrt_root(mollify_measure(mu, rho, 0.3, g)).values());

  try {
    cutoff_sqrt(mu, rho, chi, 1.0 / 16, Grid(1, 16.0, 1 << 13));
    FAIL("expected a box error");
  } catch (const GridError& e) {
    CHECK(std::string(e.what()).find("need L >= 32") != std::string::npos);
  }
}

TEST_CASE("association of the squared root") {
  const auto rho = Mollifier::poisson(1);
  const Grid g(1, 4.0, 1 << 15);
  const auto eps = EpsGrid::standard();

  const auto delta = association_check(squares_of(Measure::dirac(1), rho, eps, g), Measure::dirac(1),
                                       {bump(at(0), 1.0)});
  CHECK(delta.passes);
  CHECK(delta.rows[0].target == 1.0);
  CHECK(delta.rows[0].rate >= 0.9);

  const auto pair_mu = Measure::two_point(1, at(-1), at(1));
  const auto odd = association_check(squares_of(pair_mu, rho, eps, g), pair_mu, {odd_bump(at(0), 2.0)});
  CHECK(odd.rows[0].target == doctest::Approx(0.0));
  // Symmetric data against an odd test function vanish at every eps.
  for (double gap : odd.rows[0].gaps) CHECK(gap < 1e-12);
  CHECK(odd.passes);

  // A measure that is not the limit fails.
  const auto wrong = association_check(squares_of(Measure::dirac(1), rho, eps, g), pair_mu,
                                       {bump(at(1), 0.5)});
  CHECK_FALSE(wrong.passes);
}

TEST_CASE("square roots of a point mass vanish like eps^{n/2}") {
  const auto rho = Mollifier::cauchy_power(1, 4.0);
  const Grid g(1, 2.0, 1 << 13);
  const auto eps = EpsGrid::dyadic(3, 8);
  const auto roots = FieldNet::generate(eps, [&](double e) {
    return sqrt_root(mollify_measure(Measure::dirac(1), rho, e, g));
  });
  const auto r = vanishing_sqrt_check(roots, rho, {bump(at(0), 1.0), bump(at(0.3), 0.5)});
  CHECK(r.expected_rate == 0.5);
  CHECK(r.passes);

  // A test function supported in 1.5 <= |x| <= 2.5 sees only the tail of sqrt(rho_eps):
  // eps^{1/2} int_{|y| > 1.5/eps} sqrt(c) (1 + y^2)^{-1} dy.
  const Grid wide(1, 4.0, 1 << 14);
  const TestFunction far(wide, bump(at(2), 0.5));
  for (double e : {0.25, 0.0625, 1.0 / 64}) {
    const auto phi = sqrt_root(mollify_measure(Measure::dirac(1), rho, e, wide));
    const double tail = std::sqrt(e) * std::sqrt(rho.normalization()) * (pi - 2 * std::atan(1.5 / e));
    CHECK(std::abs(pair(phi, far)) <= tail);
  }
  CHECK_THROWS_AS(vanishing_sqrt_check(roots, Mollifier::poisson(1), {bump(at(0), 1.0)}), PreconditionError);
}

TEST_CASE("square roots vanish like eps in the plane") {
  const auto rho = Mollifier::cauchy_power(2, 8.0);
  const Grid g(2, 1.0, 2048);
  const auto eps = EpsGrid::dyadic(2, 7);
  const auto roots = FieldNet::generate(eps, [&](double e) {
    return sqrt_root(mollify_measure(Measure::dirac(2), rho, e, g));
  });
  const auto r = vanishing_sqrt_check(roots, rho, {bump(at(0, 0), 0.9)});
  MESSAGE("plane rate " << r.rows[0].rate);
  CHECK(r.expected_rate == 1.0);
  CHECK(r.passes);
}

TEST_CASE("cutoff roots are moderate in H^k") {
  const auto rho = Mollifier::poisson(1);
  const CutoffFamily chi;
  const auto eps = EpsGrid::dyadic(1, 6);
  const Grid g(1, 128.0, 1 << 17);
  const auto net = FieldNet::generate(eps, [&](double e) {
    return cutoff_sqrt(Measure::dirac(1), rho, chi, e, g).g;
  });
  for (int k = 0; k <= 2; ++k) {
    const auto fit = classify_moderate(net, Seminorm::hk(k));
    CHECK(fit.verdict.kind == VerdictKind::moderate);
    CHECK(std::isfinite(fit.slope));
  }
}

TEST_CASE("property: positivity and mass for random mixtures") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> loc(-1.5, 1.5), wt(0.1, 1.0);
  const auto rho = Mollifier::cauchy_power(1, 6.0);
  const Grid g(1, 64.0, 1 << 15);
  for (int trial = 0; trial < 8; ++trial) {
    const double a = wt(rng), b = wt(rng), c = wt(rng), s = a + b + c;
    const double lo = std::min(loc(rng), 0.0), hi = lo + 0.5 + wt(rng);
    DensityPart d;
    d.kind = DensityKind::uniform;
    d.weight = c / s;
    d.lower = lo;
    d.upper = hi;
    const Measure mu(1, {{at(loc(rng)), a / s}, {at(loc(rng)), b / s}}, {d});
    for (double e : {0.5, 0.125, 1.0 / 32}) {
      const auto h = mollify_measure(mu, rho, e, g);
      CHECK(h.real().minCoeff() > 0);
      // Tail beyond 64 of c (1+y^2)^{-3} with c = 8/(3 pi) is below 1e-9.
      CHECK(std::abs(g.cell_volume() * h.real().sum() - 1.0) < 1e-6);
    }
  }
}

TEST_CASE("property: plateau identity across a sweep") {
  const auto rho = Mollifier::cauchy_power(2, 4.0);
  const CutoffFamily chi;
  const Grid g(2, 8.0, 512);
  const Measure mu(2, {{at(0.5, 0.0), 0.5}}, {[] {
                     DensityPart d;
                     d.kind = DensityKind::gaussian;
                     d.weight = 0.5;
                     d.width = 0.3;
                     return d;
                   }()});
  for (double e : {1.0, 0.5, 0.3, 0.25}) {
    const auto c = cutoff_sqrt(mu, rho, chi, e, g);
    bool same = true;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      if (g.point(i).norm() <= std::ldexp(1.0, c.j)) same = same && c.g[i] == c.phi[i];
    }
    CHECK(same);
  }
}
