#pragma once

#include <complex>
#include <variant>
#include <vector>

namespace stovex {

using cplx = std::complex<double>;

struct Circle {
  cplx center{0.0, 0.0};
  double radius = 1.0;
  int orientation = 1;
};

enum class LineRule {
  // Equispaced midpoints; spectral for integrands analytic in a strip
  // around the line that are negligible at the ends.
  Midpoint,
  GaussLegendre,
};

// Segment re + i[-half_height, half_height], oriented upwards.
struct VerticalLine {
  double re = 0.5;
  double half_height = 10.0;
  LineRule rule = LineRule::Midpoint;
};

// Integral of f dz is approximated by sum f(z) * dz over the nodes.
struct QuadNode {
  cplx z;
  cplx dz;
};

struct ContourSpec {
  std::variant<Circle, std::vector<Circle>, VerticalLine> shape;
  int nodes = 128;  // per circle, or on the whole segment

  std::vector<QuadNode> discretize() const;
  ContourSpec doubled() const;
};

ContourSpec circle_contour(cplx center, double radius, int nodes, int orientation = 1);

struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;
};

// n-point rule on [-1, 1].
GaussLegendre gauss_legendre(int n);

// Trapezoid nodes on a circle; dz includes the 2*pi/M step.
std::vector<QuadNode> circle_nodes(const Circle& c, int nodes);

}  // namespace stovex
