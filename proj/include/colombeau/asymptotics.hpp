#pragma once

#include <span>
#include <string>
#include <vector>

#include "colombeau/eps_net.hpp"

namespace colombeau {

/// Ordinary least-squares line y = slope * x + intercept.
struct LineFit {
  double slope = 0;
  double intercept = 0;
  double residual_rms = 0;
  std::size_t points = 0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Fit of log(y) against log(x), skipping entries with y <= 0 or non-finite.
LineFit fit_log_log(std::span<const double> x, std::span<const double> y);

/// Power-law rate of `values` as eps -> 0: the slope of log(value) against
/// log(eps). A decaying quantity has positive rate.
LineFit eps_rate(const EpsGrid& eps, std::span<const double> values);

enum class VerdictKind { moderate, negligible_up_to, inconclusive };

/// Empirical, finite-grid verdict; never a proof for all eps.
struct Verdict {
  VerdictKind kind = VerdictKind::inconclusive;
  int order = 0;  // N for moderate(N), q for negligible_up_to(q)
  std::string describe() const;
};

/// Log-log regression of a seminorm against 1/eps plus the verdict.
struct AsymptoticFit {
  double slope = 0;
  double intercept = 0;
  double residual_rms = 0;
  std::size_t points_used = 0;
  Verdict verdict;
};

struct FitThresholds {
  double max_residual = 0.1;      // log units
  double negligible_slack = 0.1;  // slope <= -q + slack
  std::size_t min_points = 4;
};

enum class SeminormKind { l2, hk, linf };

struct Seminorm {
  SeminormKind kind = SeminormKind::l2;
  int order = 0;  // k for H^k

  static Seminorm l2() { return {SeminormKind::l2, 0}; }
  static Seminorm hk(int k) { return {SeminormKind::hk, k}; }
  static Seminorm linf() { return {SeminormKind::linf, 0}; }

  double operator()(const Field& u) const;
  std::string name() const;
};

AsymptoticFit classify_moderate(const ScalarNet& seminorms, const FitThresholds& th = {});
AsymptoticFit classify_moderate(const FieldNet& net, const Seminorm& p, const FitThresholds& th = {});

AsymptoticFit classify_negligible(const ScalarNet& seminorms, int q_max,
                                  const FitThresholds& th = {});
AsymptoticFit classify_negligible(const FieldNet& net, const Seminorm& p, int q_max,
                                  const FitThresholds& th = {});

/// Log-type growth test for sup-norms of time derivatives:
/// value_eps ~ A + B log(1/eps).
struct LogTypeFit {
  bool passes = false;
  double constant = 0;          // A
  double log_coefficient = 0;   // B
  double relative_residual = 0; // rms(residual) / rms(fitted)
  double power_slope = 0;       // competing fit value ~ C eps^{-s}
  double power_relative_residual = 0;
  bool power_preferred = false;
};

struct LogTypeThresholds {
  double max_relative_residual = 0.2;
  // A power law beats the log model when its slope exceeds min_power_slope
  // and its relative residual is below power_margin times the log model's.
  double min_power_slope = 0.05;
  double power_margin = 0.5;
};

LogTypeFit check_log_type(const ScalarNet& sup_norms, const LogTypeThresholds& th = {});

}  // namespace colombeau
