#include "colombeau/coefficients.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "colombeau/errors.hpp"
#include "colombeau/key_value.hpp"

namespace colombeau {

namespace {

// (2/pi) atan(x / eps): a unit step smoothed at scale eps, values in (-1, 1).
double smoothed_sign(double x, double eps) { return 2.0 / std::numbers::pi * std::atan(x / eps); }

std::string describe(const std::string& name, std::initializer_list<double> args) {
  std::ostringstream os;
  os << name << '(';
  bool first = true;
  for (double a : args) {
    os << (first ? "" : ",") << a;
    first = false;
  }
  os << ')';
  return os.str();
}

constexpr double kTimeStep = 1e-5;

}  // namespace

CoefficientFamily::CoefficientFamily(std::string descriptor, Generator generator)
    : descriptor_(std::move(descriptor)), generator_(std::move(generator)) {}

CoefficientFamily CoefficientFamily::constant(double value) {
  return {describe("constant", {value}), [value](const Point&, double, double) { return value; }};
}

CoefficientFamily CoefficientFamily::smoothed_jump(double lo, double hi, double x0) {
  return {describe("smoothed_jump", {lo, hi, x0}), [=](const Point& x, double, double eps) {
            return lo + (hi - lo) * (0.5 + std::atan((x(0) - x0) / eps) / std::numbers::pi);
          }};
}

CoefficientFamily CoefficientFamily::log_oscillating(double base, double amp) {
  return {describe("log_oscillating", {base, amp}), [=](const Point& x, double t, double eps) {
            return base + amp * std::sin(t * std::log(1.0 / eps)) * smoothed_sign(x(0), eps);
          }};
}

CoefficientFamily CoefficientFamily::power_ramp(double base, double amp, double power) {
  return {describe("power_ramp", {base, amp, power}), [=](const Point& x, double t, double eps) {
            return base + amp * t * std::pow(eps, -power) * smoothed_sign(x(0), eps);
          }};
}

CoefficientFamily CoefficientFamily::log_ramp(double base, double amp) {
  return {describe("log_ramp", {base, amp}), [=](const Point& x, double t, double eps) {
            return base + amp * t * std::log(1.0 / eps) * smoothed_sign(x(0), eps);
          }};
}

CoefficientFamily CoefficientFamily::smooth(double amp, double wobble) {
  return {describe("smooth", {amp, wobble}), [=](const Point& x, double t, double) {
            return 1.0 + amp * std::exp(-x.squaredNorm()) * (1.0 + wobble * std::sin(t));
          }};
}

CoefficientFamily CoefficientFamily::gaussian_well(double depth, double width) {
  return {describe("gaussian_well", {depth, width}), [=](const Point& x, double, double) {
            return -depth * std::exp(-x.squaredNorm() / (width * width));
          }};
}

CoefficientFamily CoefficientFamily::parse(const std::string& text) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw PreconditionError("malformed coefficient family '" + text + "'");
  }
  const std::string name = trim(text.substr(0, open));
  std::vector<double> a;
  const std::string inner = trim(text.substr(open + 1, close - open - 1));
  if (!inner.empty()) {
    for (const auto& item : split(inner, ',')) {
      try {
        a.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw PreconditionError("non-numeric argument in coefficient family '" + text + "'");
      }
    }
  }
  auto arity = [&](std::size_t k) {
    if (a.size() != k) {
      throw PreconditionError("coefficient family '" + name + "' expects " + std::to_string(k) +
                              " arguments");
    }
  };
  if (name == "constant") return arity(1), constant(a[0]);
  if (name == "smoothed_jump") return arity(3), smoothed_jump(a[0], a[1], a[2]);
  if (name == "log_oscillating") return arity(2), log_oscillating(a[0], a[1]);
  if (name == "power_ramp") return arity(3), power_ramp(a[0], a[1], a[2]);
  if (name == "log_ramp") return arity(2), log_ramp(a[0], a[1]);
  if (name == "smooth") return arity(2), smooth(a[0], a[1]);
  if (name == "gaussian_well") return arity(2), gaussian_well(a[0], a[1]);
  throw PreconditionError("unknown coefficient family '" + name + "'");
}

Eigen::VectorXd CoefficientFamily::sample(const Grid& grid, double t, double eps) const {
  Eigen::VectorXd v(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) v(i) = generator_(grid.point(i), t, eps);
  return v;
}

Eigen::VectorXd CoefficientFamily::time_derivative(const Grid& grid, double t, double eps) const {
  Eigen::VectorXd v(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const Point x = grid.point(i);
    v(i) = (generator_(x, t + kTimeStep, eps) - generator_(x, t - kTimeStep, eps)) /
           (2.0 * kTimeStep);
  }
  return v;
}

double CoefficientNet::min_c(const Grid& grid, double eps, const std::vector<double>& times) const {
  double m = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid.dim(); ++k) {
    for (double t : times) m = std::min(m, axis(k).sample(grid, t, eps).minCoeff());
  }
  return m;
}

double CoefficientNet::dt_c_sup(const Grid& grid, double eps,
                                const std::vector<double>& times) const {
  double m = 0;
  for (int k = 0; k < grid.dim(); ++k) {
    for (double t : times) {
      m = std::max(m, axis(k).time_derivative(grid, t, eps).cwiseAbs().maxCoeff());
    }
  }
  return m;
}

double CoefficientNet::dt_v_sup(const Grid& grid, double eps,
                                const std::vector<double>& times) const {
  double m = 0;
  for (double t : times) m = std::max(m, V.time_derivative(grid, t, eps).cwiseAbs().maxCoeff());
  return m;
}

double CoefficientNet::v_sup(const Grid& grid, double eps, const std::vector<double>& times) const {
  double m = 0;
  for (double t : times) m = std::max(m, V.sample(grid, t, eps).cwiseAbs().maxCoeff());
  return m;
}

std::vector<double> sample_times(double T, int count) {
  if (count < 2) return {0.0, T};
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(T * i / (count - 1));
  return out;
}

LogTypeAudit audit_log_type(const CoefficientNet& coeffs, const EpsGrid& eps,
                            const std::function<Grid(double)>& grid_for, double T,
                            int time_samples) {
  const auto times = sample_times(T, time_samples);
  std::vector<double> dc, dv;
  for (double e : eps) {
    const Grid grid = grid_for(e);
    dc.push_back(coeffs.dt_c_sup(grid, e, times));
    dv.push_back(coeffs.dt_v_sup(grid, e, times));
  }
  LogTypeAudit audit{ScalarNet(eps, dc, "sup|dt c|"), ScalarNet(eps, dv, "sup|dt V|"), {}, {}, false};
  audit.c_fit = check_log_type(audit.dt_c);
  audit.v_fit = check_log_type(audit.dt_v);
  audit.passes = audit.c_fit.passes && audit.v_fit.passes;
  return audit;
}

}  // namespace colombeau
