#pragma once

#include <cmath>
#include <string>
#include <type_traits>
#include <vector>

#include "colombeau/errors.hpp"
#include "colombeau/grid_function.hpp"

namespace colombeau {

/// Finite, strictly decreasing sample of the regularization index set (0, 1].
class EpsGrid {
 public:
  static constexpr std::size_t kMinPoints = 6;

  explicit EpsGrid(std::vector<double> values);

  /// eps_j = 2^{-j} for j = first..last.
  static EpsGrid dyadic(int first, int last);
  /// eps_j = 2^{-j/2} for j = first..last.
  static EpsGrid half_dyadic(int first, int last);
  /// eps_j = scale * 2^{-j} for j = first..last.
  static EpsGrid scaled_dyadic(double scale, int first, int last);
  /// Default sweep: 2^{-2} .. 2^{-9}.
  static EpsGrid standard() { return dyadic(2, 9); }

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double smallest() const { return values_.back(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  std::vector<double> values_;
};

/// A representative net sampled on an EpsGrid: one item per eps. Items are
/// scalars (seminorm values) or grid functions on a common grid.
template <typename Item>
class EpsNet {
 public:
  EpsNet(EpsGrid eps, std::vector<Item> items, std::string label = {})
      : eps_(std::move(eps)), items_(std::move(items)), label_(std::move(label)) {
    if (items_.size() != eps_.size()) {
      throw PreconditionError("net '" + label_ + "' has " + std::to_string(items_.size()) +
                              " items for " + std::to_string(eps_.size()) + " eps values");
    }
    if constexpr (std::is_same_v<Item, Field>) {
      for (const auto& item : items_) {
        if (item.grid() != items_.front().grid()) {
          throw GridError("net '" + label_ + "' mixes grid functions on different grids");
        }
      }
    }
  }

  /// Builds the net by evaluating make(eps) on every grid point.
  template <typename F>
  static EpsNet generate(const EpsGrid& eps, F&& make, std::string label = {}) {
    std::vector<Item> items;
    items.reserve(eps.size());
    for (double e : eps) items.push_back(make(e));
    return EpsNet(eps, std::move(items), std::move(label));
  }

  const EpsGrid& eps() const { return eps_; }
  const std::vector<Item>& items() const { return items_; }
  const std::string& label() const { return label_; }
  std::size_t size() const { return items_.size(); }
  const Item& operator[](std::size_t i) const { return items_[i]; }

  /// Applies a seminorm (or any map) itemwise.
  template <typename F>
  auto map(F&& f, std::string label = {}) const {
    using Out = std::decay_t<decltype(f(items_.front()))>;
    std::vector<Out> out;
    out.reserve(items_.size());
    for (const auto& item : items_) out.push_back(f(item));
    return EpsNet<Out>(eps_, std::move(out), label.empty() ? label_ : std::move(label));
  }

 private:
  EpsGrid eps_;
  std::vector<Item> items_;
  std::string label_;
};

using ScalarNet = EpsNet<double>;
using FieldNet = EpsNet<Field>;

}  // namespace colombeau
