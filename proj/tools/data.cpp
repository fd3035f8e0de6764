#include "data.hpp"

#include <cmath>

#include "colombeau/free_propagator.hpp"

namespace colombeau::app {

InitialData profile(const DataSpec& data) {
  if (data.kind == "gaussian") {
    const double w = data.width, k = data.wavenumber;
    return [w, k](const Point& x) { return std::exp(Complex(-x.squaredNorm() / (w * w), k * x(0))); };
  }
  if (data.kind == "triangle") {
    const double r = data.width;
    return [r](const Point& x) { return Complex(std::max(0.0, 1.0 - x.norm() / r), 0.0); };
  }
  return {};
}

std::function<Field(double, const Grid&)> initial_net(const DataSpec& data, const Mollifier& rho) {
  if (data.kind == "dirac") {
    return [rho](double e, const Grid& g) { return scaled_mollifier(rho, e, g).field; };
  }
  if (data.kind == "sqrt_dirac") {
    return [rho](double e, const Grid& g) { return sqrt_dirac_data(rho, e, g); };
  }
  const InitialData f = profile(data);
  return [rho, f](double e, const Grid& g) { return mollify_field(Field::sample(g, f), rho, e); };
}

ForcingData pulse_forcing() {
  return [](const Point& x, double t) { return Complex(std::exp(-x.squaredNorm()) * std::cos(t), 0.0); };
}

CoefficientNet coefficient_net(const Config& cfg) {
  CoefficientNet net;
  net.c = cfg.coefficients("c");
  net.V = cfg.coefficient("V");
  net.c0 = cfg.real("c0");
  return net;
}

GridPolicy grid_policy(const Config& cfg) {
  GridPolicy p;
  p.dim = cfg.dim();
  p.half_width = cfg.real("half_width");
  p.points = cfg.integer("points");
  if (p.points == 0) p.spacing_per_eps = cfg.real("spacing_per_eps");
  p.min_points = cfg.integer("min_points");
  return p;
}

}  // namespace colombeau::app
