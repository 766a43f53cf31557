#pragma once

#include <vector>

namespace stovex {

struct GueValue {
  double value = 0.0;
  double doubling = 0.0;  // change from nodes to 2*nodes
};

// F_GUE(s) = det(I - K_Airy) on (s, inf), s in [-10, 6]. The value returned
// is the one at 2*nodes; throws QuadratureNotConverged when doubling moves
// it by more than tol.
GueValue f_gue_checked(double s, int nodes = 48, double tol = 1e-8);
double f_gue(double s, int nodes = 48);

// det(I - K_Airy) with exactly `nodes` Gauss-Legendre points.
double f_gue_fixed(double s, int nodes);

struct TwTable {
  std::vector<double> s;
  std::vector<double> F;
  double max_doubling = 0.0;

  double mean() const;
  double variance() const;
  // Linear interpolation; 0 below the grid and 1 above it.
  double operator()(double x) const;
};

TwTable tw_table(double lo = -10.0, double hi = 6.0, int points = 801, int nodes = 48,
                 int threads = 1);

}  // namespace stovex
