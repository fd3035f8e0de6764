#pragma once

#include <cmath>

#include "colombeau/grid_function.hpp"
#include "colombeau/spectral.hpp"

namespace colombeau {

/// Discrete L2 norm (dx^n sum |u_i|^2)^{1/2}.
template <typename Scalar>
Scalar norm_l2(const GridFunction<Scalar>& u) {
  return std::sqrt(u.grid().cell_volume() * u.values().squaredNorm());
}

template <typename Scalar>
Scalar norm_linf(const GridFunction<Scalar>& u) {
  return u.values().size() == 0 ? Scalar(0) : u.values().cwiseAbs().maxCoeff();
}

/// W^{k,inf} seminorm: max over |alpha| <= k of sup |d^alpha u|, spectral
/// derivatives.
template <typename Scalar>
Scalar norm_wk_inf(const GridFunction<Scalar>& u, int k) {
  if (k < 0 || k > kMaxSobolevOrder) throw UnsupportedOrder("W^{k,inf} supports 0 <= k <= 4");
  Scalar best = norm_linf(u);
  for (int a0 = 0; a0 <= k; ++a0) {
    for (int a1 = 0; a0 + a1 <= k; ++a1) {
      if (a0 + a1 == 0) continue;
      if (u.grid().dim() == 1 && a1 > 0) continue;
      best = std::max(best, norm_linf(partial(u, a0, a1)));
    }
  }
  return best;
}

/// Sup norm of all derivatives of exact order k (max over |alpha| == k).
template <typename Scalar>
Scalar derivative_sup(const GridFunction<Scalar>& u, int k) {
  if (k == 0) return norm_linf(u);
  Scalar best = 0;
  for (int a0 = 0; a0 <= k; ++a0) {
    const int a1 = k - a0;
    if (u.grid().dim() == 1 && a1 > 0) continue;
    best = std::max(best, norm_linf(partial(u, a0, a1)));
  }
  return best;
}

/// Ratio of the largest modulus on the outermost grid layer to the global
/// maximum. Experiments want this below 1e-10 so periodic truncation of R^n
/// is harmless.
template <typename Scalar>
Scalar boundary_decay_ratio(const GridFunction<Scalar>& u) {
  const Scalar peak = norm_linf(u);
  if (peak == Scalar(0)) return 0;
  Scalar edge = 0;
  const auto& g = u.grid();
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (g.on_boundary_layer(i)) edge = std::max(edge, std::abs(u[i]));
  }
  return edge / peak;
}

/// Discrete mass dx^n sum |u_i|^2, i.e. the total of the density |u|^2.
template <typename Scalar>
Scalar mass(const GridFunction<Scalar>& u) {
  return u.grid().cell_volume() * u.values().squaredNorm();
}

/// dx^n sum u_i (no conjugation).
template <typename Scalar>
std::complex<Scalar> integral(const GridFunction<Scalar>& u) {
  return u.grid().cell_volume() * u.values().sum();
}

}  // namespace colombeau
