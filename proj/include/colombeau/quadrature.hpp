#pragma once

#include <array>

namespace colombeau {

/// 8-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 8> kGaussNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline constexpr std::array<double, 8> kGaussWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

/// Composite Gauss-Legendre integral of f over [a, b] with equal panels.
template <typename F>
double integrate_interval(F&& f, double a, double b, int panels = 64) {
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t q = 0; q < kGaussNodes.size(); ++q) {
      total += kGaussWeights[q] * f(mid + 0.5 * h * kGaussNodes[q]);
    }
  }
  return 0.5 * h * total;
}

/// Tensor-product version on the square [a, b]^2.
template <typename F>
double integrate_square(F&& f, double a, double b, int panels = 64) {
  return integrate_interval(
      [&](double y) { return integrate_interval([&](double x) { return f(x, y); }, a, b, panels); },
      a, b, panels);
}

}  // namespace colombeau
