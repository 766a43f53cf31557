#include "stovex/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <numbers>

#include "stovex/errors.hpp"

namespace stovex {

std::vector<QuadNode> circle_nodes(const Circle& c, int nodes) {
  if (nodes <= 0 || !(c.radius > 0.0)) fail(Errc::OutOfDomain, "circle needs nodes>0, radius>0");
  std::vector<QuadNode> out;
  out.reserve(static_cast<std::size_t>(nodes));
  const double h = 2.0 * std::numbers::pi / nodes;
  for (int k = 0; k < nodes; ++k) {
    const cplx e = std::polar(1.0, h * k);
    out.push_back({c.center + c.radius * e,
                   cplx(0.0, static_cast<double>(c.orientation)) * c.radius * e * h});
  }
  return out;
}

GaussLegendre gauss_legendre(int n) {
  if (n <= 0) fail(Errc::OutOfDomain, "Gauss-Legendre needs n > 0");
  const auto zeros = boost::math::legendre_p_zeros<double>(n);
  GaussLegendre r;
  auto weight = [n](double x) {
    const double d = boost::math::legendre_p_prime(n, x);
    return 2.0 / ((1.0 - x * x) * d * d);
  };
  for (auto it = zeros.rbegin(); it != zeros.rend(); ++it) {
    if (*it == 0.0) continue;
    r.x.push_back(-*it);
    r.w.push_back(weight(*it));
  }
  if (n % 2 == 1) {
    r.x.push_back(0.0);
    r.w.push_back(weight(0.0));
  }
  for (double z : zeros) {
    if (z == 0.0) continue;
    r.x.push_back(z);
    r.w.push_back(weight(z));
  }
  return r;
}

std::vector<QuadNode> ContourSpec::discretize() const {
  if (const auto* c = std::get_if<Circle>(&shape)) return circle_nodes(*c, nodes);
  if (const auto* u = std::get_if<std::vector<Circle>>(&shape)) {
    std::vector<QuadNode> out;
    for (const Circle& c : *u) {
      const auto part = circle_nodes(c, nodes);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  const auto& line = std::get<VerticalLine>(shape);
  std::vector<QuadNode> out;
  if (line.rule == LineRule::Midpoint) {
    if (nodes <= 0) fail(Errc::OutOfDomain, "line rule needs nodes > 0");
    const double h = 2.0 * line.half_height / nodes;
    for (int k = 0; k < nodes; ++k) {
      out.push_back({cplx(line.re, -line.half_height + (k + 0.5) * h), cplx(0.0, h)});
    }
    return out;
  }
  const GaussLegendre g = gauss_legendre(nodes);
  for (std::size_t k = 0; k < g.x.size(); ++k) {
    const double y = line.half_height * g.x[k];
    out.push_back({cplx(line.re, y), cplx(0.0, line.half_height * g.w[k])});
  }
  return out;
}

ContourSpec ContourSpec::doubled() const {
  ContourSpec c = *this;
  c.nodes *= 2;
  return c;
}

ContourSpec circle_contour(cplx center, double radius, int nodes, int orientation) {
  return {Circle{center, radius, orientation}, nodes};
}

}  // namespace stovex
