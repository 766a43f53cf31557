#include "stovex/qseries.hpp"

#include <cmath>
#include <limits>

#include "stovex/detail/algebra.hpp"
#include "stovex/errors.hpp"

namespace stovex {

cplx q_pochhammer(cplx x, cplx q, int k) {
  if (k < 0) fail(Errc::OutOfDomain, "q_pochhammer needs k >= 0");
  cplx r(1.0), xq = x;
  for (int i = 0; i < k; ++i) {
    r *= 1.0 - xq;
    xq *= q;
  }
  return r;
}

cplx q_pochhammer_inf(cplx x, cplx q) {
  const double aq = std::abs(q);
  if (!(aq < 1.0)) fail(Errc::DivergentParameter, "(x;q)_inf needs |q| < 1");
  constexpr double eps = std::numeric_limits<double>::epsilon();
  cplx r(1.0), xq = x;
  // |log prod_{j>=i}(1 - x q^j)| <= 2 |x q^i| / (1 - |q|) once |x q^i| <= 1/2
  for (int i = 0; i < 100000; ++i) {
    const double a = std::abs(xq);
    if (a <= 0.5 && 2.0 * a / (1.0 - aq) < 0.25 * eps) return r;
    r *= 1.0 - xq;
    xq *= q;
  }
  fail(Errc::DivergentParameter, "(x;q)_inf did not converge");
}

cplx q_binomial(int n, int k, cplx q) {
  if (k < 0 || k > n) fail(Errc::OutOfDomain, "q_binomial needs 0 <= k <= n");
  cplx num(1.0), den(1.0);
  for (int i = 1; i <= k; ++i) {
    num *= 1.0 - detail::ipow(q, n - k + i);
    den *= 1.0 - detail::ipow(q, i);
  }
  return num / den;
}

}  // namespace stovex
