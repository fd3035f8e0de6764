#pragma once

#include <Eigen/Core>

#include <complex>
#include <type_traits>
#include <utility>

#include "colombeau/grid.hpp"

namespace colombeau {

/// Complex field sampled on a SpatialGrid. Immutable once constructed:
/// every operation returns a new value.
template <typename Scalar = double>
class GridFunction {
 public:
  using Complex = std::complex<Scalar>;
  using Values = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
  using GridType = SpatialGrid<Scalar>;

  GridFunction(GridType grid, Values values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw GridError("grid function has " + std::to_string(values_.size()) +
                      " values but the grid has " + std::to_string(grid_.size()) + " nodes");
    }
    if (!values_.allFinite()) {
      throw GridError("grid function contains non-finite values");
    }
  }

  static GridFunction zeros(const GridType& grid) {
    return GridFunction(grid, Values::Zero(grid.size()));
  }

  static GridFunction constant(const GridType& grid, Complex value) {
    return GridFunction(grid, Values::Constant(grid.size(), value));
  }

  /// Samples f at every node. f takes a PointT<Scalar> and returns a real or
  /// complex number.
  template <typename F>
  static GridFunction sample(const GridType& grid, F&& f) {
    Values v(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      v(i) = Complex(f(grid.point(i)));
    }
    return GridFunction(grid, std::move(v));
  }

  /// Wraps a real vector of node values.
  static GridFunction from_real(const GridType& grid,
                                const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& real) {
    return GridFunction(grid, real.template cast<Complex>());
  }

  const GridType& grid() const { return grid_; }
  const Values& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  Complex operator[](Eigen::Index i) const { return values_(i); }

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> real() const { return values_.real(); }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> modulus_squared() const {
    return values_.cwiseAbs2();
  }

  GridFunction conj() const { return GridFunction(grid_, values_.conjugate()); }

  /// Applies f to every node value.
  template <typename F>
  GridFunction map(F&& f) const {
    Values v(values_.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(f(values_(i)));
    return GridFunction(grid_, std::move(v));
  }

  friend GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    a.require_same_grid(b);
    return GridFunction(a.grid_, a.values_ + b.values_);
  }
  friend GridFunction operator-(const GridFunction& a, const GridFunction& b) {
    a.require_same_grid(b);
    return GridFunction(a.grid_, a.values_ - b.values_);
  }
  friend GridFunction operator*(Complex s, const GridFunction& a) {
    return GridFunction(a.grid_, s * a.values_);
  }
  friend GridFunction operator*(const GridFunction& a, Complex s) { return s * a; }

  /// Pointwise product.
  friend GridFunction operator*(const GridFunction& a, const GridFunction& b) {
    a.require_same_grid(b);
    return GridFunction(a.grid_, a.values_.cwiseProduct(b.values_));
  }

  void require_same_grid(const GridFunction& other) const {
    if (grid_ != other.grid_) throw GridError("grid functions live on different grids");
  }

 private:
  GridType grid_;
  Values values_;
};

using Field = GridFunction<double>;
using Complex = std::complex<double>;

}  // namespace colombeau
