#include "stovex/tracy_widom.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "stovex/airy.hpp"
#include "stovex/errors.hpp"
#include "stovex/parallel.hpp"
#include "stovex/quadrature.hpp"

namespace stovex {

namespace {

const GaussLegendre& cached_rule(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendre> rules;
  std::lock_guard<std::mutex> lock(mu);
  auto it = rules.find(n);
  if (it == rules.end()) it = rules.emplace(n, gauss_legendre(n)).first;
  return it->second;
}

double upper_cut(double s) { return std::min(s + std::max(12.0, 4.0 - s), kAiryRange); }

}  // namespace

double f_gue_fixed(double s, int nodes) {
  if (!(s >= -10.0 && s <= 6.0)) {
    std::ostringstream os;
    os << "f_gue: s=" << s << " outside [-10, 6]";
    fail(Errc::OutOfSupportedRange, os.str());
  }
  const GaussLegendre& g = cached_rule(nodes);
  const double b = upper_cut(s);
  const double half = 0.5 * (b - s), mid = 0.5 * (b + s);
  const auto n = static_cast<Eigen::Index>(nodes);
  std::vector<double> x(nodes), sw(nodes);
  std::vector<AiryValues> a(nodes);
  for (int i = 0; i < nodes; ++i) {
    x[i] = mid + half * g.x[i];
    sw[i] = std::sqrt(half * g.w[i]);
    a[i] = airy(x[i]);
  }
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < nodes; ++i) {
    for (int j = 0; j < nodes; ++j) {
      m(i, j) = (i == j ? 1.0 : 0.0) - sw[i] * airy_kernel(x[i], a[i], x[j], a[j]) * sw[j];
    }
  }
  return Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
}

GueValue f_gue_checked(double s, int nodes, double tol) {
  const double coarse = f_gue_fixed(s, nodes);
  GueValue v;
  v.value = f_gue_fixed(s, 2 * nodes);
  v.doubling = std::fabs(v.value - coarse);
  if (!(v.doubling <= tol)) {
    std::ostringstream os;
    os << "f_gue(" << s << ") changed by " << v.doubling << " under node doubling";
    fail(Errc::QuadratureNotConverged, os.str());
  }
  return v;
}

double f_gue(double s, int nodes) { return f_gue_checked(s, nodes).value; }

TwTable tw_table(double lo, double hi, int points, int nodes, int threads) {
  if (points < 3 || !(hi > lo)) fail(Errc::InvalidArgument, "tw_table needs points>=3, hi>lo");
  TwTable t;
  t.s.resize(points);
  t.F.resize(points);
  std::vector<double> dbl(points);
  parallel_for(static_cast<std::size_t>(points), threads, [&](std::size_t i) {
    t.s[i] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    const GueValue v = f_gue_checked(t.s[i], nodes);
    t.F[i] = v.value;
    dbl[i] = v.doubling;
  });
  t.max_doubling = *std::max_element(dbl.begin(), dbl.end());
  return t;
}

namespace {

// Trapezoid integral of h(s_i) over the table grid.
template <typename H>
double integrate(const TwTable& t, H h) {
  double sum = 0.0;
  for (std::size_t i = 1; i < t.s.size(); ++i) {
    sum += 0.5 * (t.s[i] - t.s[i - 1]) * (h(i) + h(i - 1));
  }
  return sum;
}

}  // namespace

double TwTable::mean() const {
  // E[X] = lo + int (1 - F) beyond lo, with the mass outside the grid neglected.
  const double lo = s.front();
  return lo + integrate(*this, [&](std::size_t i) { return 1.0 - F[i]; });
}

double TwTable::variance() const {
  const double lo = s.front();
  const double m = mean();
  // E[(X - lo)^2] = int 2 (s - lo)(1 - F).
  const double second = integrate(*this, [&](std::size_t i) { return 2.0 * (s[i] - lo) * (1.0 - F[i]); });
  return second - (m - lo) * (m - lo);
}

double TwTable::operator()(double x) const {
  if (x <= s.front()) return 0.0;
  if (x >= s.back()) return 1.0;
  const double h = s[1] - s[0];
  const auto i = std::min(static_cast<std::size_t>((x - s.front()) / h), s.size() - 2);
  const double w = (x - s[i]) / (s[i + 1] - s[i]);
  return F[i] + w * (F[i + 1] - F[i]);
}

}  // namespace stovex
