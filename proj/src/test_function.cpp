#include "colombeau/test_function.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "colombeau/errors.hpp"
#include "colombeau/norms.hpp"

namespace colombeau {

namespace {

double bump_profile(double r, double radius) {
  const double s = r / radius;
  if (s >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

std::vector<double> parse_args(const std::string& text, std::string& name) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open) {
    throw PreconditionError("malformed test function '" + text + "'");
  }
  name = text.substr(0, open);
  while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
  while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front()))) name.erase(0, 1);
  std::vector<double> args;
  std::stringstream ss(text.substr(open + 1, close - open - 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      args.push_back(std::stod(item, &used));
    } catch (const std::exception&) {
      throw PreconditionError("non-numeric argument in test function '" + text + "'");
    }
  }
  return args;
}

}  // namespace

std::string TestFunctionSpec::descriptor() const {
  std::ostringstream os;
  os << name << '(';
  for (std::size_t i = 0; i < params.size(); ++i) os << (i ? "," : "") << params[i];
  os << ')';
  return os.str();
}

TestFunctionSpec bump(const Point& center, double radius) {
  if (!(radius > 0)) throw PreconditionError("bump radius must be positive");
  TestFunctionSpec s;
  s.name = "bump";
  s.params = {center(0), center(1), radius};
  s.center = center;
  s.support_radius = radius;
  s.evaluate = [center, radius](const Point& x) { return bump_profile((x - center).norm(), radius); };
  return s;
}

TestFunctionSpec odd_bump(const Point& center, double radius) {
  auto s = bump(center, radius);
  s.name = "odd_bump";
  s.evaluate = [center, radius](const Point& x) {
    return (x(0) - center(0)) * bump_profile((x - center).norm(), radius);
  };
  return s;
}

TestFunctionSpec oscillatory_bump(const Point& center, double radius, double frequency) {
  auto s = bump(center, radius);
  s.name = "oscillatory";
  s.params.push_back(frequency);
  s.evaluate = [center, radius, frequency](const Point& x) {
    return std::cos(frequency * x(0)) * bump_profile((x - center).norm(), radius);
  };
  return s;
}

TestFunctionSpec parse_test_function(const std::string& text, int dim) {
  std::string name;
  const auto args = parse_args(text, name);
  const std::size_t extra = name == "oscillatory" ? 1 : 0;
  if (args.size() != static_cast<std::size_t>(dim) + 1 + extra) {
    throw PreconditionError("test function '" + text + "' expects " +
                            std::to_string(dim + 1 + extra) + " arguments in " +
                            std::to_string(dim) + "D");
  }
  Point c = Point::Zero();
  for (int d = 0; d < dim; ++d) c(d) = args[d];
  const double r = args[dim];
  TestFunctionSpec spec;
  if (name == "bump") {
    spec = bump(c, r);
  } else if (name == "odd_bump") {
    spec = odd_bump(c, r);
  } else if (name == "oscillatory") {
    spec = oscillatory_bump(c, r, args[dim + 1]);
  } else {
    throw PreconditionError("unknown test function '" + name + "'");
  }
  // Descriptors echo the arguments as written, without the unused second coordinate in 1D.
  spec.params = args;
  return spec;
}

TestFunction::TestFunction(const Grid& grid, TestFunctionSpec spec)
    : spec_(std::move(spec)), field_(Field::zeros(grid)) {
  const double reach = spec_.support_radius + std::max(std::abs(spec_.center(0)),
                                                       std::abs(spec_.center(1)));
  if (reach >= grid.half_width() - grid.spacing()) {
    throw GridError("test function " + spec_.descriptor() + " is not supported inside the box");
  }
  Field::Values v(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) v(i) = spec_(grid.point(i));
  field_ = Field(grid, std::move(v));
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    if (grid.on_boundary_layer(i) && field_[i] != Complex(0.0)) {
      throw GridError("test function does not vanish on the boundary layer");
    }
  }
}

double TestFunction::integral() const { return colombeau::integral(field_).real(); }

Complex pair(const Field& u, const TestFunction& psi) {
  if (u.grid() != psi.grid()) throw GridError("pairing across different grids");
  return u.grid().cell_volume() * u.values().cwiseProduct(psi.field().values()).sum();
}

double pair_density(const Eigen::VectorXd& density, const TestFunction& psi) {
  if (density.size() != psi.grid().size()) throw GridError("density size does not match grid");
  return psi.grid().cell_volume() * density.dot(psi.field().real());
}

}  // namespace colombeau
