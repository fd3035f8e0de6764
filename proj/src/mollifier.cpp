#include "colombeau/mollifier.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "colombeau/errors.hpp"
#include "colombeau/quadrature.hpp"

namespace colombeau {

namespace {

double sphere_measure(int dim) { return dim == 1 ? 2.0 : 2.0 * std::numbers::pi; }

}  // namespace

double radial_integral(const std::function<double(double)>& f, int dim, double r_min) {
  // r = r_min + s / (1 - s); panels are graded toward s = 1 where heavy tails live.
  constexpr int kPanels = 4000;
  double total = 0.0;
  for (int p = 0; p < kPanels; ++p) {
    const double a = 1.0 - std::pow(1.0 - static_cast<double>(p) / kPanels, 3);
    const double b = 1.0 - std::pow(1.0 - static_cast<double>(p + 1) / kPanels, 3);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t q = 0; q < kGaussNodes.size(); ++q) {
      const double s = mid + half * kGaussNodes[q];
      const double one_minus = 1.0 - s;
      const double r = r_min + s / one_minus;
      const double jac = 1.0 / (one_minus * one_minus);
      const double radial_weight = dim == 1 ? 1.0 : r;
      total += kGaussWeights[q] * half * f(r) * radial_weight * jac;
    }
  }
  return sphere_measure(dim) * total;
}

Mollifier Mollifier::cauchy_power(int dim, double exponent) {
  if (dim != 1 && dim != 2) throw PreconditionError("mollifier dimension must be 1 or 2");
  if (!(exponent > dim)) {
    throw PreconditionError("cauchy_power exponent must exceed the dimension for integrability");
  }
  Mollifier m;
  m.family_ = MollifierFamily::cauchy_power;
  m.dim_ = dim;
  m.exponent_ = exponent;
  m.name_ = "cauchy_power";
  const double n = dim;
  // int (1+|x|^2)^{-m/2} dx = pi^{n/2} Gamma((m-n)/2) / Gamma(m/2)
  m.normalization_ =
      std::tgamma(exponent / 2.0) / (std::pow(std::numbers::pi, n / 2.0) * std::tgamma((exponent - n) / 2.0));
  m.profile_ = [exponent](double r) { return std::pow(1.0 + r * r, -exponent / 2.0); };
  m.tail_exponent_ = exponent;
  // 1 + r^2 <= 2 r^2 for r >= 1.
  m.tail_constant_ = m.normalization_ * std::pow(2.0, -exponent / 2.0);
  return m;
}

Mollifier Mollifier::custom(int dim, std::string name, std::function<double(double)> profile,
                            double tail_exponent) {
  if (dim != 1 && dim != 2) throw PreconditionError("mollifier dimension must be 1 or 2");
  if (!(tail_exponent > dim)) throw PreconditionError("tail exponent must exceed the dimension");
  Mollifier m;
  m.family_ = MollifierFamily::custom;
  m.dim_ = dim;
  m.name_ = std::move(name);
  m.exponent_ = std::numeric_limits<double>::quiet_NaN();
  m.profile_ = std::move(profile);
  const double raw_mass = radial_integral(m.profile_, dim);
  if (!(raw_mass > 0) || !std::isfinite(raw_mass)) {
    throw PreconditionError("custom mollifier profile has no finite positive mass");
  }
  m.normalization_ = 1.0 / raw_mass;
  m.tail_exponent_ = tail_exponent;
  double c = std::numeric_limits<double>::infinity();
  for (double r = 1.0; r <= double(1 << 20); r *= 2.0) {
    c = std::min(c, m(r) * std::pow(r, tail_exponent));
  }
  m.tail_constant_ = c;
  return m;
}

std::string Mollifier::descriptor() const {
  std::ostringstream os;
  os << name_;
  if (family_ == MollifierFamily::cauchy_power) os << '(' << exponent_ << ')';
  os << " dim=" << dim_;
  return os.str();
}

double Mollifier::scaled(double r, double eps) const {
  const double scale = dim_ == 1 ? eps : eps * eps;
  return (*this)(r / eps) / scale;
}

double Mollifier::tail_mass(double radius) const {
  return radial_integral([this](double r) { return (*this)(r); }, dim_, radius);
}

double Mollifier::tail_radius(double tol) const {
  double lo = 0.0, hi = 1.0;
  while (tail_mass(hi) > tol) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw PreconditionError("mollifier tail does not decay below tolerance");
  }
  while (hi - lo > 0.01 * hi) {
    const double mid = 0.5 * (lo + hi);
    (tail_mass(mid) > tol ? lo : hi) = mid;
  }
  return hi;
}

bool Mollifier::sqrt_integrable() const {
  if (family_ == MollifierFamily::cauchy_power) return exponent_ > 2.0 * dim_;
  return tail_exponent_ > 2.0 * dim_ && std::isfinite(sqrt_l1_norm());
}

double Mollifier::sqrt_l1_norm() const {
  if (family_ == MollifierFamily::cauchy_power) {
    if (!(exponent_ > 2.0 * dim_)) return std::numeric_limits<double>::infinity();
    const double n = dim_;
    const double half = exponent_ / 2.0;
    return std::sqrt(normalization_) * std::pow(std::numbers::pi, n / 2.0) *
           std::tgamma((half - n) / 2.0) / std::tgamma(half / 2.0);
  }
  return radial_integral([this](double r) { return std::sqrt((*this)(r)); }, dim_);
}

MollifierValidation validate(const Mollifier& rho, double max_radius) {
  MollifierValidation v;
  v.mass = radial_integral([&](double r) { return rho(r); }, rho.dim());
  v.mass_ok = std::abs(v.mass - 1.0) <= 1e-6;
  v.positive = true;
  v.monotone = true;
  v.tail_ok = true;
  v.unit_tail_ok = true;
  double previous = rho(0.0);
  if (!(previous > 0)) v.positive = false;
  for (double r = 1.0; r <= max_radius; r *= 2.0) {
    const double value = rho(r);
    if (!(value > 0)) v.positive = false;
    if (value > previous) v.monotone = false;
    previous = value;
    const double scaled = value * std::pow(r, rho.tail_exponent());
    v.tail_samples.emplace_back(r, scaled);
    if (scaled < rho.tail_constant() * (1.0 - 1e-12)) v.tail_ok = false;
    if (scaled < 1.0) v.unit_tail_ok = false;
  }
  v.tail_ok = v.tail_ok && rho.tail_constant() > 0;
  return v;
}

void require_resolution(const Grid& grid, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw PreconditionError("eps must lie in (0, 1]");
  if (grid.spacing() > eps / kPointsPerEps) {
    const auto minimal = points_for_spacing(grid.half_width(), eps / kPointsPerEps);
    std::ostringstream msg;
    msg << "grid spacing " << grid.spacing() << " does not resolve eps=" << eps
        << " (need dx <= eps/8, i.e. at least M=" << minimal << " points per axis for L="
        << grid.half_width() << ")";
    throw ResolutionError(msg.str(), static_cast<long>(minimal));
  }
}

MollifierSample scaled_mollifier(const Mollifier& rho, double eps, const Grid& grid) {
  if (rho.dim() != grid.dim()) throw GridError("mollifier and grid dimensions differ");
  require_resolution(grid, eps);
  Eigen::VectorXd values(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) values(i) = rho.scaled(grid.point(i).norm(), eps);
  const double discrete_mass = grid.cell_volume() * values.sum();
  return {Field::from_real(grid, values), eps, discrete_mass};
}

}  // namespace colombeau
