#include "colombeau/eps_net.hpp"

#include <cmath>
#include <sstream>

namespace colombeau {

EpsGrid::EpsGrid(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < kMinPoints) {
    throw PreconditionError("eps grid needs at least " + std::to_string(kMinPoints) +
                            " points, got " + std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double e = values_[i];
    if (!(e > 0.0 && e <= 1.0)) {
      std::ostringstream msg;
      msg << "eps grid value " << e << " at position " << i << " is outside (0, 1]";
      throw PreconditionError(msg.str());
    }
    if (i > 0 && !(e < values_[i - 1])) {
      std::ostringstream msg;
      msg << "eps grid must be strictly decreasing: position " << i << " has " << e
          << " after " << values_[i - 1];
      throw PreconditionError(msg.str());
    }
  }
}

EpsGrid EpsGrid::dyadic(int first, int last) { return scaled_dyadic(1.0, first, last); }

EpsGrid EpsGrid::scaled_dyadic(double scale, int first, int last) {
  std::vector<double> v;
  for (int j = first; j <= last; ++j) v.push_back(scale * std::ldexp(1.0, -j));
  return EpsGrid(std::move(v));
}

EpsGrid EpsGrid::half_dyadic(int first, int last) {
  std::vector<double> v;
  for (int j = first; j <= last; ++j) v.push_back(std::pow(2.0, -0.5 * j));
  return EpsGrid(std::move(v));
}

}  // namespace colombeau
