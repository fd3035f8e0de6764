#pragma once

#include <functional>
#include <string>
#include <vector>

#include "colombeau/asymptotics.hpp"
#include "colombeau/eps_net.hpp"
#include "colombeau/grid.hpp"

namespace colombeau {

/// Closed-form family of real fields (x, t, eps) -> value, evaluated per
/// regularization scale. Rough coefficients enter only through these
/// smooth eps-representatives.
class CoefficientFamily {
 public:
  using Generator = std::function<double(const Point& x, double t, double eps)>;

  CoefficientFamily(std::string descriptor, Generator generator);

  static CoefficientFamily constant(double value);
  /// lo + (hi - lo) (1/2 + atan((x_0 - x0) / eps) / pi): a jump at x0
  /// smoothed at scale eps.
  static CoefficientFamily smoothed_jump(double lo, double hi, double x0);
  /// base + amp sin(t log(1/eps)) (2/pi) atan(x_0 / eps). Time derivatives
  /// grow like log(1/eps); values stay in [base - amp, base + amp].
  static CoefficientFamily log_oscillating(double base, double amp);
  /// base + amp t g(eps) (2/pi) atan(x_0 / eps) with g = eps^{-power}.
  static CoefficientFamily power_ramp(double base, double amp, double power);
  /// base + amp t log(1/eps) (2/pi) atan(x_0 / eps).
  static CoefficientFamily log_ramp(double base, double amp);
  /// 1 + amp exp(-|x|^2) (1 + wobble sin t): smooth and eps-independent.
  static CoefficientFamily smooth(double amp, double wobble);
  /// -depth exp(-|x|^2 / width^2).
  static CoefficientFamily gaussian_well(double depth, double width);

  /// "constant(v)", "smoothed_jump(lo,hi,x0)", "log_oscillating(base,amp)",
  /// "power_ramp(base,amp,p)", "log_ramp(base,amp)", "smooth(amp,wobble)",
  /// "gaussian_well(depth,width)".
  static CoefficientFamily parse(const std::string& text);

  const std::string& descriptor() const { return descriptor_; }
  double operator()(const Point& x, double t, double eps) const { return generator_(x, t, eps); }

  Eigen::VectorXd sample(const Grid& grid, double t, double eps) const;
  /// Central-difference time derivative at the nodes.
  Eigen::VectorXd time_derivative(const Grid& grid, double t, double eps) const;

 private:
  std::string descriptor_;
  Generator generator_;
};

/// Coefficient data of the Cauchy problem: c_k for each axis (one entry
/// means the same family on every axis), the potential V and the uniform
/// lower bound c0.
struct CoefficientNet {
  std::vector<CoefficientFamily> c;
  CoefficientFamily V = CoefficientFamily::constant(0.0);
  double c0 = 1.0;

  const CoefficientFamily& axis(int k) const { return c.size() == 1 ? c.front() : c.at(k); }

  /// Smallest c_k over axes, nodes and the given times.
  double min_c(const Grid& grid, double eps, const std::vector<double>& times) const;
  /// max_k sup |d_t c_k| over nodes and times.
  double dt_c_sup(const Grid& grid, double eps, const std::vector<double>& times) const;
  /// sup |d_t V| over nodes and times.
  double dt_v_sup(const Grid& grid, double eps, const std::vector<double>& times) const;
  /// sup |V| over nodes and times.
  double v_sup(const Grid& grid, double eps, const std::vector<double>& times) const;
};

/// Evenly spaced sample times 0, T/(count-1), ..., T.
std::vector<double> sample_times(double T, int count);

/// Log-type audit: sup-norm nets of d_t c and d_t V across eps and their fits.
struct LogTypeAudit {
  ScalarNet dt_c;
  ScalarNet dt_v;
  LogTypeFit c_fit;
  LogTypeFit v_fit;
  bool passes = false;
};

/// grid_for(eps) supplies the sampling grid at each scale.
LogTypeAudit audit_log_type(const CoefficientNet& coeffs, const EpsGrid& eps,
                            const std::function<Grid(double)>& grid_for, double T,
                            int time_samples = 17);

}  // namespace colombeau
