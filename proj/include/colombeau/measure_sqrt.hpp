#pragma once

#include <string>
#include <vector>

#include "colombeau/asymptotics.hpp"
#include "colombeau/eps_net.hpp"
#include "colombeau/measure.hpp"
#include "colombeau/mollifier.hpp"
#include "colombeau/test_function.hpp"

namespace colombeau {

/// h_eps = mu * rho_eps on the grid. Atoms are summed in closed form,
/// densities are cell-averaged and convolved periodically by FFT.
/// Throws PositivityError if any node is not strictly positive.
Field mollify_measure(const Measure& mu, const Mollifier& rho, double eps, const Grid& grid);

/// Pointwise positive square root of a strictly positive real field.
Field sqrt_root(const Field& h);

struct LowerBoundReport {
  double eps = 0;
  double measured_inf = 0;     // min of h over grid nodes with |x| <= K radius
  double a_radius = 0;         // canonical A: smallest centered ball with mu(A) >= 1/2
  double a_mass = 0;           // mu(A)
  double r_k = 0;              // max |x - a| over x in K, a in A
  bool precondition_ok = false;  // eps < 1 / r_k
  double paper_bound = 0;      // eps^{m0-n} / (2 r_k^{m0})
  double sharp_bound = 0;      // mu(A) rho_eps(r_k)
  double tail_bound = 0;       // mu(A) C eps^{m0-n} r_k^{-m0}
  bool paper_ok = false;
  bool sharp_ok = false;
};

LowerBoundReport lower_bound_check(const Field& h, const Measure& mu, const Mollifier& rho,
                                   double eps, double k_radius);

/// Lower-bound reports across an eps sweep plus the fitted eps-exponent of
/// inf_K h_eps (expected m0 - n).
struct LowerBoundSweep {
  std::vector<LowerBoundReport> reports;
  LineFit fit;
};

LowerBoundSweep lower_bound_sweep(const Measure& mu, const Mollifier& rho, const EpsGrid& eps,
                                  const Grid& grid, double k_radius);

/// Smooth radial cutoff chi0: 1 for |x| <= 1, 0 for |x| >= 2, built from the
/// integrated exp(-1/(1-t^2)) bump. chi_j(x) = chi0(2^{-j} x).
class CutoffFamily {
 public:
  CutoffFamily();

  /// The unique integer j with 2^{-j-1} < eps <= 2^{-j}.
  static int index(double eps);

  double chi0(double r) const;
  double chi(int j, double r) const;
  /// chi_j sampled on the grid.
  Field sample(int j, const Grid& grid) const;

 private:
  double normalization_;
};

/// g_eps = chi_{j(eps)} phi_eps with its dyadic index.
struct CutoffSqrt {
  Field g;
  Field phi;
  int j = 0;
};

/// Throws GridError naming the needed half width when the box does not
/// contain the support |x| <= 2^{j+1}.
CutoffSqrt cutoff_sqrt(const Measure& mu, const Mollifier& rho, const CutoffFamily& chi,
                       double eps, const Grid& grid);

/// Per-test gap sequence d_j = |<net_j, psi> - mu(psi)|.
struct AssociationRow {
  std::string test;
  double target = 0;
  std::vector<double> gaps;
  bool monotone = false;
  double final_gap = 0;
  double rate = 0;  // eps-slope of the gaps
  bool passes = false;
};

struct AssociationReport {
  std::vector<AssociationRow> rows;
  bool passes = false;
};

struct AssociationThresholds {
  double slack = 0.1;          // d_{j+1} <= (1 + slack) d_j
  double final_tol = 1e-2;
  double noise_floor = 1e-12;  // gaps below this count as converged
};

/// `squares` holds phi_eps^2 (or g_eps^2) on a common grid.
AssociationReport association_check(const FieldNet& squares, const Measure& mu,
                                    const std::vector<TestFunctionSpec>& tests,
                                    const AssociationThresholds& th = {});

struct VanishingRow {
  std::string test;
  std::vector<double> pairings;  // |<phi_eps, psi>|
  double rate = 0;
  bool passes = false;
};

struct VanishingReport {
  double expected_rate = 0;  // n / 2
  std::vector<VanishingRow> rows;
  bool passes = false;
};

/// Checks |<phi_eps, psi>| ~ eps^{n/2}. Requires sqrt(rho) integrable.
VanishingReport vanishing_sqrt_check(const FieldNet& roots, const Mollifier& rho,
                                     const std::vector<TestFunctionSpec>& tests,
                                     double tol = 0.1);

}  // namespace colombeau
