#include "colombeau/measure.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "colombeau/errors.hpp"
#include "colombeau/key_value.hpp"
#include "colombeau/quadrature.hpp"

namespace colombeau {

namespace {

double overlap(double a, double b, double lo, double hi) {
  return std::max(0.0, std::min(b, hi) - std::max(a, lo));
}

// P(a <= X <= b) for X ~ N(0, 1), written with erfc to keep tails accurate.
double normal_mass(double a, double b) {
  return 0.5 * (std::erfc(a / std::numbers::sqrt2) - std::erfc(b / std::numbers::sqrt2));
}

std::string point_text(const Point& p, int dim) {
  std::ostringstream os;
  os << p(0);
  if (dim == 2) os << ',' << p(1);
  return os.str();
}

}  // namespace

double DensityPart::operator()(const Point& x, int dim) const {
  if (kind == DensityKind::uniform) {
    for (int d = 0; d < dim; ++d) {
      if (x(d) < lower || x(d) > upper) return 0.0;
    }
    return weight / std::pow(upper - lower, dim);
  }
  const double r2 = (x - center).squaredNorm();
  return weight * std::exp(-0.5 * r2 / (width * width)) /
         std::pow(2.0 * std::numbers::pi * width * width, 0.5 * dim);
}

double DensityPart::cell_mass(const Point& x, double h, int dim) const {
  double m = weight;
  for (int d = 0; d < dim; ++d) {
    const double a = x(d) - 0.5 * h, b = x(d) + 0.5 * h;
    if (kind == DensityKind::uniform) {
      m *= overlap(a, b, lower, upper) / (upper - lower);
    } else {
      m *= normal_mass((a - center(d)) / width, (b - center(d)) / width);
    }
  }
  return m;
}

double DensityPart::integrate(const TestFunctionSpec& f, int dim) const {
  auto range = [&](int d) -> std::pair<double, double> {
    if (kind == DensityKind::uniform) return {lower, upper};
    return {center(d) - 12.0 * width, center(d) + 12.0 * width};
  };
  const auto [a0, b0] = range(0);
  if (dim == 1) {
    return integrate_interval([&](double x) { return f(Point(x, 0.0)) * (*this)(Point(x, 0.0), 1); },
                              a0, b0, 400);
  }
  const auto [a1, b1] = range(1);
  return integrate_interval(
      [&](double y) {
        return integrate_interval(
            [&](double x) { return f(Point(x, y)) * (*this)(Point(x, y), 2); }, a0, b0, 96);
      },
      a1, b1, 96);
}

double DensityPart::mass_within(double r, int dim) const {
  if (dim == 1) {
    if (kind == DensityKind::uniform) return weight * overlap(-r, r, lower, upper) / (upper - lower);
    return weight * normal_mass((-r - center(0)) / width, (r - center(0)) / width);
  }
  if (r <= 0) return 0.0;
  return integrate_interval(
      [&](double rho) {
        return rho * integrate_interval(
                         [&](double theta) {
                           return (*this)(Point(rho * std::cos(theta), rho * std::sin(theta)), 2);
                         },
                         0.0, 2.0 * std::numbers::pi, 64);
      },
      0.0, r, 64);
}

double DensityPart::extent() const {
  if (kind == DensityKind::uniform) return std::numbers::sqrt2 * std::max(std::abs(lower), std::abs(upper));
  return center.norm() + 9.0 * width;
}

Measure::Measure(int dim, std::vector<Atom> atoms, std::vector<DensityPart> densities)
    : dim_(dim), atoms_(std::move(atoms)), densities_(std::move(densities)) {
  if (dim != 1 && dim != 2) throw PreconditionError("measure dimension must be 1 or 2");
  std::ostringstream os;
  bool first = true;
  for (const auto& a : atoms_) {
    if (!(a.weight > 0)) throw PreconditionError("atom weights must be positive");
    os << (first ? "" : " + ") << a.weight << "*dirac(" << point_text(a.location, dim) << ')';
    first = false;
  }
  for (const auto& d : densities_) {
    if (!(d.weight > 0)) throw PreconditionError("density weights must be positive");
    if (d.kind == DensityKind::uniform) {
      if (!(d.upper > d.lower)) throw PreconditionError("uniform density needs lower < upper");
      os << (first ? "" : " + ") << d.weight << "*uniform(" << d.lower << ',' << d.upper << ')';
    } else {
      if (!(d.width > 0)) throw PreconditionError("gaussian density needs a positive width");
      os << (first ? "" : " + ") << d.weight << "*gaussian(" << d.width << ','
         << point_text(d.center, dim) << ')';
    }
    first = false;
  }
  if (first) throw PreconditionError("measure has no atoms and no density");
  descriptor_ = os.str();
  if (std::abs(total() - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "measure weights sum to " << total() << ", expected 1";
    throw PreconditionError(msg.str());
  }
}

Measure Measure::dirac(int dim, const Point& at) { return Measure(dim, {{at, 1.0}}); }

Measure Measure::two_point(int dim, const Point& a, const Point& b) {
  return Measure(dim, {{a, 0.5}, {b, 0.5}});
}

Measure Measure::uniform(int dim, double lower, double upper) {
  DensityPart d;
  d.kind = DensityKind::uniform;
  d.weight = 1.0;
  d.lower = lower;
  d.upper = upper;
  return Measure(dim, {}, {d});
}

Measure Measure::gaussian(int dim, double sigma, const Point& center) {
  DensityPart d;
  d.kind = DensityKind::gaussian;
  d.weight = 1.0;
  d.width = sigma;
  d.center = center;
  return Measure(dim, {}, {d});
}

Measure Measure::parse(const std::string& text, int dim) {
  std::vector<Atom> atoms;
  std::vector<DensityPart> densities;
  for (const auto& term : split(text, '+')) {
    if (term.empty()) throw PreconditionError("empty term in measure '" + text + "'");
    double w = 1.0;
    std::string body = term;
    if (const auto star = term.find('*'); star != std::string::npos) {
      try {
        w = std::stod(term.substr(0, star));
      } catch (const std::exception&) {
        throw PreconditionError("non-numeric weight in measure term '" + term + "'");
      }
      body = trim(term.substr(star + 1));
    }
    const auto open = body.find('(');
    const auto close = body.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open) {
      throw PreconditionError("malformed measure term '" + term + "'");
    }
    const std::string name = trim(body.substr(0, open));
    std::vector<double> args;
    for (const auto& a : split(body.substr(open + 1, close - open - 1), ',')) {
      try {
        args.push_back(std::stod(a));
      } catch (const std::exception&) {
        throw PreconditionError("non-numeric argument in measure term '" + term + "'");
      }
    }
    auto expect = [&](std::size_t lo, std::size_t hi) {
      if (args.size() < lo || args.size() > hi) {
        throw PreconditionError("wrong number of arguments in measure term '" + term + "'");
      }
    };
    if (name == "dirac") {
      expect(dim, dim);
      Point p = Point::Zero();
      for (int d = 0; d < dim; ++d) p(d) = args[d];
      atoms.push_back({p, w});
    } else if (name == "uniform") {
      expect(2, 2);
      DensityPart d;
      d.kind = DensityKind::uniform;
      d.weight = w;
      d.lower = args[0];
      d.upper = args[1];
      densities.push_back(d);
    } else if (name == "gaussian") {
      expect(1, 1 + dim);
      DensityPart d;
      d.kind = DensityKind::gaussian;
      d.weight = w;
      d.width = args[0];
      for (std::size_t k = 1; k < args.size(); ++k) d.center(k - 1) = args[k];
      densities.push_back(d);
    } else {
      throw PreconditionError("unknown measure term '" + name + "'");
    }
  }
  return Measure(dim, std::move(atoms), std::move(densities));
}

double Measure::total() const {
  double t = 0;
  for (const auto& a : atoms_) t += a.weight;
  for (const auto& d : densities_) t += d.weight;
  return t;
}

double Measure::apply(const TestFunctionSpec& psi) const {
  double v = 0;
  for (const auto& a : atoms_) v += a.weight * psi(a.location);
  for (const auto& d : densities_) v += d.integrate(psi, dim_);
  return v;
}

double Measure::mass_within(double r) const {
  double m = 0;
  for (const auto& a : atoms_) {
    if (a.location.norm() <= r) m += a.weight;
  }
  for (const auto& d : densities_) m += d.mass_within(r, dim_);
  return m;
}

double Measure::central_radius(double fraction) const {
  double lo = 0.0, hi = extent();
  if (mass_within(0.0) >= fraction) return 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (mass_within(mid) >= fraction ? hi : lo) = mid;
  }
  return hi;
}

double Measure::extent() const {
  double r = 0;
  for (const auto& a : atoms_) r = std::max(r, a.location.norm());
  for (const auto& d : densities_) r = std::max(r, d.extent());
  return r;
}

}  // namespace colombeau
