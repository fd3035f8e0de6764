#pragma once

#include <string>
#include <vector>

#include "colombeau/grid.hpp"
#include "colombeau/test_function.hpp"

namespace colombeau {

struct Atom {
  Point location = Point::Zero();
  double weight = 0;
};

enum class DensityKind { uniform, gaussian };

/// Weighted probability density: uniform on the cube [lower, upper]^n, or
/// an isotropic Gaussian with standard deviation `width` about `center`.
struct DensityPart {
  DensityKind kind = DensityKind::uniform;
  double weight = 0;
  double lower = 0;
  double upper = 0;
  Point center = Point::Zero();
  double width = 0;

  /// Weighted density value at x.
  double operator()(const Point& x, int dim) const;
  /// Weighted mass of the grid cell centered at x with side h.
  double cell_mass(const Point& x, double h, int dim) const;
  /// Weighted integral of f against the density.
  double integrate(const TestFunctionSpec& f, int dim) const;
  /// Weighted mass inside the centered ball of radius r.
  double mass_within(double r, int dim) const;
  /// Radius of a centered ball holding all (or, for Gaussians, all but 1e-16) of the mass.
  double extent() const;
};

/// Probability measure: finitely many atoms plus a mixture of densities.
class Measure {
 public:
  Measure(int dim, std::vector<Atom> atoms, std::vector<DensityPart> densities = {});

  static Measure dirac(int dim, const Point& at = Point::Zero());
  /// (1/2) delta_a + (1/2) delta_b.
  static Measure two_point(int dim, const Point& a, const Point& b);
  static Measure uniform(int dim, double lower, double upper);
  static Measure gaussian(int dim, double sigma, const Point& center = Point::Zero());

  /// Parses "[w*]term + [w*]term ..." with terms dirac(c0[,c1]),
  /// uniform(a,b) and gaussian(sigma[,c0[,c1]]).
  static Measure parse(const std::string& text, int dim);

  int dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensityPart>& densities() const { return densities_; }
  double total() const;

  /// mu(psi) = sum_atoms w psi(a) + density quadrature.
  double apply(const TestFunctionSpec& psi) const;
  /// mu of the closed centered ball of radius r.
  double mass_within(double r) const;
  /// Smallest centered ball radius R with mu(B_R) >= fraction.
  double central_radius(double fraction = 0.5) const;
  /// Radius of a centered ball containing the support (atoms and densities).
  double extent() const;
  std::string descriptor() const { return descriptor_; }

 private:
  int dim_;
  std::vector<Atom> atoms_;
  std::vector<DensityPart> densities_;
  std::string descriptor_;
};

}  // namespace colombeau
