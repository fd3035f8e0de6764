#pragma once

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <vector>

#include "colombeau/errors.hpp"
#include "colombeau/grid_function.hpp"

namespace colombeau {

/// Discrete Fourier transform on a SpatialGrid (one or two axes).
///
/// forward() is unnormalized, inverse() divides by M^n, so Parseval reads
/// dx^n * sum|u|^2 == dx^n / M^n * sum|u_hat|^2. Not thread-safe: the FFT
/// object caches plans, create one transform per worker.
template <typename Scalar = double>
class SpectralTransform {
 public:
  using Complex = std::complex<Scalar>;
  using Values = typename GridFunction<Scalar>::Values;

  explicit SpectralTransform(const SpatialGrid<Scalar>& grid) : grid_(grid) {}

  const SpatialGrid<Scalar>& grid() const { return grid_; }

  Values forward(const Values& in) { return transform(in, false); }
  Values inverse(const Values& in) { return transform(in, true); }

  /// Angular wavenumber of FFT index i along any axis.
  Scalar wavenumber(Eigen::Index i) const {
    const Eigen::Index m = grid_.points_per_axis();
    const Eigen::Index s = i < m / 2 ? i : i - m;
    return std::numbers::pi_v<Scalar> * static_cast<Scalar>(s) / grid_.half_width();
  }

  bool is_nyquist(Eigen::Index i) const { return i == grid_.points_per_axis() / 2; }

  /// Calls f(flat, xi0, xi1, nyquist0, nyquist1) for every spectral index.
  template <typename F>
  void for_each_mode(F&& f) const {
    const Eigen::Index m = grid_.points_per_axis();
    if (grid_.dim() == 1) {
      for (Eigen::Index i = 0; i < m; ++i) f(i, wavenumber(i), Scalar(0), is_nyquist(i), false);
      return;
    }
    for (Eigen::Index i = 0; i < m; ++i) {
      const Scalar k0 = wavenumber(i);
      for (Eigen::Index j = 0; j < m; ++j) {
        f(i * m + j, k0, wavenumber(j), is_nyquist(i), is_nyquist(j));
      }
    }
  }

 private:
  Values transform(const Values& in, bool inverse) {
    const Eigen::Index m = grid_.points_per_axis();
    Values out(in.size());
    if (grid_.dim() == 1) {
      run(out.data(), in.data(), m, inverse);
      return out;
    }
    std::vector<Complex> src(m), dst(m);
    for (Eigen::Index r = 0; r < m; ++r) {
      run(out.data() + r * m, in.data() + r * m, m, inverse);
    }
    for (Eigen::Index c = 0; c < m; ++c) {
      for (Eigen::Index r = 0; r < m; ++r) src[r] = out(r * m + c);
      run(dst.data(), src.data(), m, inverse);
      for (Eigen::Index r = 0; r < m; ++r) out(r * m + c) = dst[r];
    }
    return out;
  }

  void run(Complex* dst, const Complex* src, Eigen::Index n, bool inverse) {
    if (inverse) {
      fft_.inv(dst, src, n);
    } else {
      fft_.fwd(dst, src, n);
    }
  }

  SpatialGrid<Scalar> grid_;
  Eigen::FFT<Scalar> fft_;
};

/// Symbol of d^order/dx^order at wavenumber xi. Odd orders drop the Nyquist
/// mode so derivatives of real data stay real.
template <typename Scalar>
std::complex<Scalar> derivative_symbol(Scalar xi, int order, bool nyquist) {
  if (order == 0) return {1, 0};
  if (nyquist && order % 2 == 1) return {0, 0};
  return std::pow(std::complex<Scalar>(0, xi), order);
}

/// Multiplies the spectrum of u by symbol(xi0, xi1) and transforms back.
template <typename Scalar, typename Symbol>
GridFunction<Scalar> apply_fourier_multiplier(const GridFunction<Scalar>& u, Symbol&& symbol) {
  SpectralTransform<Scalar> fft(u.grid());
  auto spec = fft.forward(u.values());
  fft.for_each_mode([&](Eigen::Index k, Scalar x0, Scalar x1, bool n0, bool n1) {
    spec(k) *= symbol(x0, x1, n0, n1);
  });
  return GridFunction<Scalar>(u.grid(), fft.inverse(spec));
}

/// Fourier-collocation derivative of order 1 or 2 along one axis.
template <typename Scalar>
GridFunction<Scalar> derivative(const GridFunction<Scalar>& u, int axis, int order) {
  if (order != 1 && order != 2) throw UnsupportedOrder("derivative order must be 1 or 2");
  if (axis < 0 || axis >= u.grid().dim()) throw GridError("derivative axis out of range");
  return apply_fourier_multiplier(u, [&](Scalar x0, Scalar x1, bool n0, bool n1) {
    return axis == 0 ? derivative_symbol(x0, order, n0) : derivative_symbol(x1, order, n1);
  });
}

/// Mixed partial derivative d^a0/dx0^a0 d^a1/dx1^a1 (any orders).
template <typename Scalar>
GridFunction<Scalar> partial(const GridFunction<Scalar>& u, int a0, int a1 = 0) {
  if (a0 < 0 || a1 < 0) throw UnsupportedOrder("negative derivative order");
  if (u.grid().dim() == 1 && a1 != 0) throw GridError("second axis requested on a 1D grid");
  return apply_fourier_multiplier(u, [&](Scalar x0, Scalar x1, bool n0, bool n1) {
    return derivative_symbol(x0, a0, n0) * derivative_symbol(x1, a1, n1);
  });
}

inline constexpr int kMaxSobolevOrder = 4;

/// H^k norm: sum over |alpha| <= k of squared L2 norms of spectral
/// derivatives, evaluated in frequency space through Parseval.
template <typename Scalar>
Scalar norm_hk(const GridFunction<Scalar>& u, int k) {
  if (k < 0 || k > kMaxSobolevOrder) {
    throw UnsupportedOrder("H^k norms are supported for 0 <= k <= 4, got k=" + std::to_string(k));
  }
  SpectralTransform<Scalar> fft(u.grid());
  const auto spec = fft.forward(u.values());
  const int dim = u.grid().dim();
  Scalar total = 0;
  fft.for_each_mode([&](Eigen::Index idx, Scalar x0, Scalar x1, bool n0, bool n1) {
    Scalar weight = 0;
    for (int a0 = 0; a0 <= k; ++a0) {
      const Scalar s0 = std::norm(derivative_symbol(x0, a0, n0));
      if (dim == 1) {
        weight += s0;
        continue;
      }
      for (int a1 = 0; a0 + a1 <= k; ++a1) {
        weight += s0 * std::norm(derivative_symbol(x1, a1, n1));
      }
    }
    total += weight * std::norm(spec(idx));
  });
  const Scalar scale = u.grid().cell_volume() / static_cast<Scalar>(u.grid().size());
  return std::sqrt(total * scale);
}

/// L2, H^1 and H^2 norms from a single transform.
template <typename Scalar>
struct SobolevNorms {
  Scalar l2 = 0;
  Scalar h1 = 0;
  Scalar h2 = 0;
};

template <typename Scalar>
SobolevNorms<Scalar> sobolev_norms(const GridFunction<Scalar>& u, SpectralTransform<Scalar>& fft) {
  const auto spec = fft.forward(u.values());
  const bool two_d = u.grid().dim() == 2;
  Scalar s0 = 0, s1 = 0, s2 = 0;
  fft.for_each_mode([&](Eigen::Index idx, Scalar x0, Scalar x1, bool n0, bool n1) {
    const Scalar p = std::norm(spec(idx));
    // Odd derivatives drop Nyquist modes, matching derivative_symbol.
    const Scalar d0 = n0 ? 0 : x0 * x0, d1 = (two_d && !n1) ? x1 * x1 : 0;
    const Scalar e0 = x0 * x0 * x0 * x0, e1 = two_d ? x1 * x1 * x1 * x1 : 0;
    const Scalar mixed = two_d && !n0 && !n1 ? x0 * x0 * x1 * x1 : 0;
    s0 += p;
    s1 += p * (d0 + d1);
    s2 += p * (e0 + e1 + mixed);
  });
  const Scalar scale = u.grid().cell_volume() / static_cast<Scalar>(u.grid().size());
  return {std::sqrt(s0 * scale), std::sqrt((s0 + s1) * scale), std::sqrt((s0 + s1 + s2) * scale)};
}

/// H^{-1} norm realized as the L2 norm of (1 + |xi|^2)^{-1/2} u_hat.
template <typename Scalar>
Scalar norm_hminus1(const GridFunction<Scalar>& u) {
  SpectralTransform<Scalar> fft(u.grid());
  const auto spec = fft.forward(u.values());
  Scalar total = 0;
  fft.for_each_mode([&](Eigen::Index idx, Scalar x0, Scalar x1, bool, bool) {
    total += std::norm(spec(idx)) / (Scalar(1) + x0 * x0 + x1 * x1);
  });
  const Scalar scale = u.grid().cell_volume() / static_cast<Scalar>(u.grid().size());
  return std::sqrt(total * scale);
}

/// L2 norm computed from the spectrum (Parseval cross-check).
template <typename Scalar>
Scalar norm_l2_spectral(const GridFunction<Scalar>& u) {
  SpectralTransform<Scalar> fft(u.grid());
  const auto spec = fft.forward(u.values());
  const Scalar scale = u.grid().cell_volume() / static_cast<Scalar>(u.grid().size());
  return std::sqrt(spec.squaredNorm() * scale);
}

/// Periodic convolution (a * b)(x_i) = dx^n sum_j a(x_j) b(x_i - x_j), where
/// `kernel` holds b sampled at the minimum-image offsets from the origin
/// (see offset_kernel).
template <typename Scalar>
GridFunction<Scalar> periodic_convolve(const GridFunction<Scalar>& a,
                                       const typename GridFunction<Scalar>::Values& kernel) {
  SpectralTransform<Scalar> fft(a.grid());
  auto fa = fft.forward(a.values());
  const auto fk = fft.forward(kernel);
  fa = fa.cwiseProduct(fk) * a.grid().cell_volume();
  return GridFunction<Scalar>(a.grid(), fft.inverse(fa));
}

/// Samples a radial kernel k(|z|) at minimum-image offsets z = o * dx,
/// o in [-M/2, M/2), stored in FFT order.
template <typename Scalar, typename F>
typename GridFunction<Scalar>::Values offset_kernel(const SpatialGrid<Scalar>& grid, F&& radial) {
  const Eigen::Index m = grid.points_per_axis();
  auto offset = [&](Eigen::Index i) {
    const Eigen::Index s = i < m / 2 ? i : i - m;
    return static_cast<Scalar>(s) * grid.spacing();
  };
  typename GridFunction<Scalar>::Values k(grid.size());
  if (grid.dim() == 1) {
    for (Eigen::Index i = 0; i < m; ++i) k(i) = radial(std::abs(offset(i)));
  } else {
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) k(i * m + j) = radial(std::hypot(offset(i), offset(j)));
  }
  return k;
}

}  // namespace colombeau
