#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "colombeau/errors.hpp"

namespace colombeau {

/// A point of R^n, n <= 2. Unused trailing coordinates are zero so radial
/// formulas work unchanged in one dimension.
template <typename Scalar>
using PointT = Eigen::Matrix<Scalar, 2, 1>;
using Point = PointT<double>;

inline bool is_power_of_two(Eigen::Index m) { return m > 0 && (m & (m - 1)) == 0; }

inline Eigen::Index next_power_of_two(double x) {
  Eigen::Index m = 1;
  while (static_cast<double>(m) < x) m <<= 1;
  return m;
}

/// Uniform periodic grid on the box [-L, L)^n with M points per axis.
///
/// Node i along an axis sits at -L + i * dx with dx = 2L / M. Since M is a
/// power of two, dx * M reproduces 2L exactly. Flat indices are row-major
/// with axis 0 slowest.
template <typename Scalar = double>
class SpatialGrid {
 public:
  SpatialGrid(int dim, Scalar half_width, Eigen::Index points_per_axis)
      : dim_(dim), half_width_(half_width), points_(points_per_axis) {
    if (dim != 1 && dim != 2) {
      throw GridError("grid dimension must be 1 or 2");
    }
    if (!(half_width > Scalar(0)) || !std::isfinite(static_cast<double>(half_width))) {
      throw GridError("grid half width must be positive and finite");
    }
    if (points_per_axis < 8 || !is_power_of_two(points_per_axis)) {
      std::ostringstream msg;
      msg << "points per axis must be a power of two >= 8, got " << points_per_axis;
      throw GridError(msg.str());
    }
    spacing_ = Scalar(2) * half_width_ / static_cast<Scalar>(points_);
  }

  int dim() const { return dim_; }
  Scalar half_width() const { return half_width_; }
  Eigen::Index points_per_axis() const { return points_; }
  Scalar spacing() const { return spacing_; }

  /// Total number of nodes, M^n.
  Eigen::Index size() const { return dim_ == 1 ? points_ : points_ * points_; }

  /// Quadrature weight of one node, dx^n.
  Scalar cell_volume() const { return dim_ == 1 ? spacing_ : spacing_ * spacing_; }

  /// Box volume (2L)^n.
  Scalar volume() const {
    const Scalar side = Scalar(2) * half_width_;
    return dim_ == 1 ? side : side * side;
  }

  Scalar coordinate(Eigen::Index axis_index) const {
    return -half_width_ + static_cast<Scalar>(axis_index) * spacing_;
  }

  std::array<Eigen::Index, 2> unravel(Eigen::Index flat) const {
    if (dim_ == 1) return {flat, 0};
    return {flat / points_, flat % points_};
  }

  Eigen::Index ravel(Eigen::Index i0, Eigen::Index i1 = 0) const {
    return dim_ == 1 ? i0 : i0 * points_ + i1;
  }

  PointT<Scalar> point(Eigen::Index flat) const {
    const auto idx = unravel(flat);
    PointT<Scalar> p;
    p(0) = coordinate(idx[0]);
    p(1) = dim_ == 1 ? Scalar(0) : coordinate(idx[1]);
    return p;
  }

  /// True when the node lies on the outermost layer of the box.
  bool on_boundary_layer(Eigen::Index flat) const {
    const auto idx = unravel(flat);
    auto edge = [&](Eigen::Index i) { return i == 0 || i == points_ - 1; };
    return dim_ == 1 ? edge(idx[0]) : (edge(idx[0]) || edge(idx[1]));
  }

  friend bool operator==(const SpatialGrid& a, const SpatialGrid& b) {
    return a.dim_ == b.dim_ && a.half_width_ == b.half_width_ && a.points_ == b.points_;
  }
  friend bool operator!=(const SpatialGrid& a, const SpatialGrid& b) { return !(a == b); }

 private:
  int dim_;
  Scalar half_width_;
  Eigen::Index points_;
  Scalar spacing_;
};

using Grid = SpatialGrid<double>;

/// Smallest power-of-two M with 2L / M <= max_spacing.
inline Eigen::Index points_for_spacing(double half_width, double max_spacing) {
  return std::max<Eigen::Index>(8, next_power_of_two(2.0 * half_width / max_spacing));
}

}  // namespace colombeau
