#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "colombeau/grid_function.hpp"

namespace colombeau {

/// Integral over R^n (n = 1, 2) of a radial function, from radius r_min to
/// infinity. Composite Gauss-Legendre after mapping [r_min, inf) to [0, 1).
double radial_integral(const std::function<double(double)>& f, int dim, double r_min = 0.0);

enum class MollifierFamily { cauchy_power, custom };

/// Radial, strictly positive, unit-mass profile rho with a polynomial lower
/// tail bound rho(x) >= tail_constant * |x|^{-tail_exponent} for |x| >= 1.
///
/// cauchy_power(m) is rho(x) = c (1 + |x|^2)^{-m/2}; m = n + 1 gives the
/// classical Cauchy/Poisson kernel.
class Mollifier {
 public:
  static Mollifier cauchy_power(int dim, double exponent);
  /// The Poisson-kernel choice c (1 + |x|^2)^{-(n+1)/2}.
  static Mollifier poisson(int dim) { return cauchy_power(dim, dim + 1.0); }
  /// Unnormalized radial profile; the constant is fixed by quadrature and
  /// the tail constant by sampling radii 1, 2, 4, ... up to 2^20.
  static Mollifier custom(int dim, std::string name, std::function<double(double)> profile,
                          double tail_exponent);

  MollifierFamily family() const { return family_; }
  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  /// The exponent m of cauchy_power; NaN for custom profiles.
  double exponent() const { return exponent_; }
  double normalization() const { return normalization_; }
  double tail_exponent() const { return tail_exponent_; }
  double tail_constant() const { return tail_constant_; }
  std::string descriptor() const;

  /// rho at radius r.
  double operator()(double r) const { return normalization_ * profile_(r); }
  /// rho_eps(x) = eps^{-n} rho(x / eps) at radius r.
  double scaled(double r, double eps) const;

  /// Mass outside the ball of radius R (unscaled profile).
  double tail_mass(double radius) const;
  /// Smallest radius (to 1%) with tail_mass below tol.
  double tail_radius(double tol) const;
  /// ||sqrt(rho)||_{L1}; +inf when sqrt(rho) is not integrable.
  double sqrt_l1_norm() const;
  /// True when sqrt(rho) is integrable (tail exponent above 2n).
  bool sqrt_integrable() const;

 private:
  Mollifier() = default;

  MollifierFamily family_ = MollifierFamily::cauchy_power;
  int dim_ = 1;
  std::string name_;
  double exponent_ = 0;
  double normalization_ = 1;
  double tail_exponent_ = 0;
  double tail_constant_ = 0;
  std::function<double(double)> profile_;
};

/// Quadrature and sampling audit of a mollifier's hypotheses.
struct MollifierValidation {
  double mass = 0;              // quadrature of rho over R^n
  bool mass_ok = false;         // |mass - 1| <= 1e-6
  bool positive = false;        // rho > 0 at all sampled radii
  bool monotone = false;        // radially non-increasing on the samples
  bool tail_ok = false;         // rho(r) >= tail_constant r^{-m0} on samples
  bool unit_tail_ok = false;    // the same bound with constant 1
  std::vector<std::pair<double, double>> tail_samples;  // (r, rho(r) r^{m0})
};

MollifierValidation validate(const Mollifier& rho, double max_radius = 1 << 20);

/// Minimal resolution for sampling rho_eps: dx <= eps / 8.
inline constexpr double kPointsPerEps = 8.0;
void require_resolution(const Grid& grid, double eps);

/// Samples of rho_eps on a grid with the discrete mass dx^n sum rho_eps.
struct MollifierSample {
  Field field;
  double eps;
  double mass;
};

MollifierSample scaled_mollifier(const Mollifier& rho, double eps, const Grid& grid);

}  // namespace colombeau
