#include "colombeau/asymptotics.hpp"

#include <cmath>
#include <sstream>

#include "colombeau/errors.hpp"
#include "colombeau/norms.hpp"

namespace colombeau {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw PreconditionError("fit_line: size mismatch");
  LineFit fit;
  fit.points = x.size();
  if (x.empty()) return fit;
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  fit.slope = sxx > 0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / n);
  return fit;
}

LineFit fit_log_log(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw PreconditionError("fit_log_log: size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] > 0 && std::isfinite(y[i]) && x[i] > 0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  return fit_line(lx, ly);
}

LineFit eps_rate(const EpsGrid& eps, std::span<const double> values) {
  return fit_log_log(eps.values(), values);
}

std::string Verdict::describe() const {
  std::ostringstream os;
  switch (kind) {
    case VerdictKind::moderate:
      os << "moderate(" << order << ")";
      break;
    case VerdictKind::negligible_up_to:
      os << "negligible_up_to(" << order << ")";
      break;
    case VerdictKind::inconclusive:
      os << "inconclusive";
      break;
  }
  return os.str();
}

double Seminorm::operator()(const Field& u) const {
  switch (kind) {
    case SeminormKind::l2:
      return norm_l2(u);
    case SeminormKind::hk:
      return norm_hk(u, order);
    case SeminormKind::linf:
      return norm_linf(u);
  }
  return 0.0;
}

std::string Seminorm::name() const {
  switch (kind) {
    case SeminormKind::l2:
      return "l2";
    case SeminormKind::hk:
      return "h" + std::to_string(order);
    case SeminormKind::linf:
      return "linf";
  }
  return "?";
}

namespace {

AsymptoticFit growth_fit(const ScalarNet& net) {
  std::vector<double> inv_eps;
  for (double e : net.eps()) inv_eps.push_back(1.0 / e);
  const LineFit line = fit_log_log(inv_eps, net.items());
  AsymptoticFit fit;
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.residual_rms = line.residual_rms;
  fit.points_used = line.points;
  return fit;
}

}  // namespace

AsymptoticFit classify_moderate(const ScalarNet& seminorms, const FitThresholds& th) {
  AsymptoticFit fit = growth_fit(seminorms);
  if (fit.points_used < th.min_points || fit.residual_rms >= th.max_residual) {
    fit.verdict = {VerdictKind::inconclusive, 0};
    return fit;
  }
  const int order = static_cast<int>(std::ceil(fit.slope - 1e-9));
  fit.verdict = {VerdictKind::moderate, std::max(0, order)};
  return fit;
}

AsymptoticFit classify_moderate(const FieldNet& net, const Seminorm& p, const FitThresholds& th) {
  return classify_moderate(net.map([&](const Field& u) { return p(u); }, p.name()), th);
}

AsymptoticFit classify_negligible(const ScalarNet& seminorms, int q_max, const FitThresholds& th) {
  if (q_max < 1) throw PreconditionError("classify_negligible needs q_max >= 1");
  AsymptoticFit fit = classify_moderate(seminorms, th);
  if (fit.verdict.kind != VerdictKind::inconclusive &&
      fit.slope <= -static_cast<double>(q_max) + th.negligible_slack) {
    fit.verdict = {VerdictKind::negligible_up_to, q_max};
  }
  return fit;
}

AsymptoticFit classify_negligible(const FieldNet& net, const Seminorm& p, int q_max,
                                  const FitThresholds& th) {
  return classify_negligible(net.map([&](const Field& u) { return p(u); }, p.name()), q_max, th);
}

LogTypeFit check_log_type(const ScalarNet& sup_norms, const LogTypeThresholds& th) {
  LogTypeFit out;
  std::vector<double> log_inv, y;
  for (std::size_t i = 0; i < sup_norms.size(); ++i) {
    if (sup_norms[i] < 0) throw PreconditionError("log-type check needs nonnegative values");
    log_inv.push_back(std::log(1.0 / sup_norms.eps()[i]));
    y.push_back(sup_norms[i]);
  }
  const LineFit line = fit_line(log_inv, y);
  out.constant = line.intercept;
  out.log_coefficient = line.slope;

  double fitted_ss = 0, resid_ss = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double f = line.intercept + line.slope * log_inv[i];
    fitted_ss += f * f;
    resid_ss += (y[i] - f) * (y[i] - f);
  }
  if (fitted_ss == 0.0) {
    // Identically zero data: the log law holds with A = B = 0.
    out.relative_residual = 0.0;
    out.passes = resid_ss == 0.0;
    return out;
  }
  out.relative_residual = std::sqrt(resid_ss / fitted_ss);

  bool all_positive = true;
  for (double v : y) all_positive = all_positive && v > 0;
  if (all_positive) {
    const LineFit power = fit_line(log_inv, [&] {
      std::vector<double> ly;
      for (double v : y) ly.push_back(std::log(v));
      return ly;
    }());
    double pfit_ss = 0, presid_ss = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double f = std::exp(power.intercept + power.slope * log_inv[i]);
      pfit_ss += f * f;
      presid_ss += (y[i] - f) * (y[i] - f);
    }
    out.power_slope = power.slope;
    out.power_relative_residual = std::sqrt(presid_ss / pfit_ss);
    out.power_preferred = power.slope > th.min_power_slope &&
                          out.power_relative_residual < th.power_margin * out.relative_residual;
  }
  out.passes = out.relative_residual < th.max_relative_residual && !out.power_preferred;
  return out;
}

}  // namespace colombeau
