#include "stovex/transition.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "stovex/detail/algebra.hpp"
#include "stovex/errors.hpp"
#include "stovex/qseries.hpp"

namespace stovex {

using detail::ipow;

namespace {

struct Grid {
  std::vector<cplx> z;
  std::vector<cplx> w;  // dz / (2 pi i)
};

Grid make_grid(const ContourSpec& c) {
  Grid g;
  const cplx two_pi_i(0.0, 2.0 * std::numbers::pi);
  for (const QuadNode& q : c.discretize()) {
    g.z.push_back(q.z);
    g.w.push_back(q.dz / two_pi_i);
  }
  return g;
}

// Sum of f over all index tuples in [0, m)^dims.
template <typename F>
cplx tensor_sum(int dims, std::size_t m, F&& f) {
  std::size_t total = 1;
  for (int d = 0; d < dims; ++d) total *= m;
  std::size_t idx[3] = {0, 0, 0};
  cplx acc(0.0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t r = flat;
    for (int d = dims - 1; d >= 0; --d) {
      idx[d] = r % m;
      r /= m;
    }
    acc += f(idx);
  }
  return acc;
}

cplx step_factor(cplx z, const ModelParams& p, int t) {
  const cplx zi = 1.0 / z;
  return ipow((p.b1() + (1.0 - p.b1() - p.b2()) * zi) / (1.0 - p.b2() * zi), t);
}

ContourSpec resolve(const std::optional<ContourSpec>& c, const ModelParams& p) {
  if (!c) return circle_contour(0.0, default_transition_radius(p), 128);
  const auto* circle = std::get_if<Circle>(&c->shape);
  if (!circle || std::abs(circle->center) != 0.0 || circle->orientation != 1) {
    fail(Errc::OutOfDomain, "transition integrals need a positive circle around 0");
  }
  const double crit = default_transition_radius(p) / 1.4;
  if (!(circle->radius > crit)) {
    std::ostringstream os;
    os << "radius " << circle->radius << " does not enclose all singularities (need > " << crit
       << ")";
    fail(Errc::OutOfDomain, os.str());
  }
  return *c;
}

template <typename Eval>
ContourValue converge(const ContourSpec& c, double tol, Eval&& eval) {
  const cplx coarse = eval(make_grid(c));
  const ContourSpec fine_spec = c.doubled();
  const cplx fine = eval(make_grid(fine_spec));
  ContourValue v{fine.real(), fine.imag(), std::abs(fine - coarse), fine_spec.nodes};
  if (!(v.doubling <= tol)) {
    std::ostringstream os;
    os << "node doubling " << c.nodes << " -> " << fine_spec.nodes << " changed the value by "
       << v.doubling << " > " << tol;
    fail(Errc::QuadratureNotConverged, os.str());
  }
  return v;
}

}  // namespace

double default_transition_radius(const ModelParams& p) {
  const double tau = p.tau();
  const double cross = 0.5 * ((1.0 + tau) + std::sqrt((1.0 + tau) * (1.0 + tau) + 4.0 * tau));
  return 1.4 * std::max({1.0, p.b2(), cross});
}

ContourValue transition_contour(std::span<const int> Y, std::span<const int> X, int t,
                                const ModelParams& p, const std::optional<ContourSpec>& contour,
                                double tol) {
  const int n = static_cast<int>(Y.size());
  if (n == 0 || X.size() != Y.size()) fail(Errc::OutOfDomain, "need |X| = |Y| > 0");
  if (n > 3) fail(Errc::TooLarge, "transition_contour is limited to N<=3");
  if (t < 0) fail(Errc::OutOfDomain, "t must be nonnegative");
  const ContourSpec spec = resolve(contour, p);
  const double ti = 1.0 / p.tau();
  const auto perms = detail::permutations(n);

  return converge(spec, tol, [&](const Grid& g) {
    const std::size_t m = g.z.size();
    std::vector<std::vector<cplx>> pw(static_cast<std::size_t>(n), std::vector<cplx>(m));
    std::vector<std::vector<cplx>> base(static_cast<std::size_t>(n), std::vector<cplx>(m));
    std::vector<cplx> cross(m * m);
    for (std::size_t k = 0; k < m; ++k) {
      const cplx z = g.z[k];
      const cplx f = step_factor(z, p, t) * g.w[k];
      for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        pw[i][k] = ipow(z, X[i]);
        base[i][k] = ipow(z, -Y[i] - 1) * f;
      }
      for (std::size_t l = 0; l < m; ++l) {
        cross[k * m + l] = 1.0 - (1.0 + ti) * z + ti * z * g.z[l];
      }
    }
    return tensor_sum(n, m, [&](const std::size_t* idx) {
      cplx den(1.0), common(1.0);
      for (int i = 0; i < n; ++i) {
        common *= base[static_cast<std::size_t>(i)][idx[i]];
        for (int j = i + 1; j < n; ++j) den *= cross[idx[i] * m + idx[j]];
      }
      cplx s(0.0);
      for (const auto& perm : perms) {
        cplx term(static_cast<double>(perm.sign));
        for (int i = 0; i < n; ++i) {
          const std::size_t a = idx[perm.map[static_cast<std::size_t>(i)]];
          term *= pw[static_cast<std::size_t>(i)][a];
          for (int j = i + 1; j < n; ++j) {
            term *= cross[a * m + idx[perm.map[static_cast<std::size_t>(j)]]];
          }
        }
        s += term;
      }
      return s * common / den;
    });
  });
}

ContourValue marginal_contour(std::span<const int> Y, int m, int x, int t, const ModelParams& p,
                              const std::optional<ContourSpec>& contour, double tol) {
  const int n = static_cast<int>(Y.size());
  if (n == 0) fail(Errc::OutOfDomain, "need at least one particle");
  if (n > 3 || t > 4) fail(Errc::TooLarge, "marginal_contour is limited to N<=3, t<=4");
  if (m < 1 || m > n || t < 0) fail(Errc::OutOfDomain, "need 1 <= m <= N and t >= 0");
  const ContourSpec spec = resolve(contour, p);
  const double tau = p.tau();
  const double ti = 1.0 / tau;

  return converge(spec, tol, [&](const Grid& g) {
    const std::size_t M = g.z.size();
    std::vector<cplx> single(M * static_cast<std::size_t>(n));
    std::vector<cplx> cross(M * M);
    for (std::size_t k = 0; k < M; ++k) {
      const cplx z = g.z[k];
      const cplx f = step_factor(z, p, t) * g.w[k] / (1.0 - z);
      for (int i = 0; i < n; ++i) single[k * n + i] = ipow(z, x - Y[i] - 1) * f;
      for (std::size_t l = 0; l < M; ++l) {
        cross[k * M + l] = (g.z[l] - z) / (1.0 - (1.0 + ti) * z + ti * z * g.z[l]);
      }
    }
    cplx total(0.0);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      const int k = __builtin_popcount(mask);
      if (k < m) continue;
      std::vector<int> members;
      int index_sum = 0;
      for (int i = 0; i < n; ++i) {
        if (mask >> i & 1u) {
          members.push_back(i);
          index_sum += i + 1;
        }
      }
      const double pre = ((m - 1) % 2 ? -1.0 : 1.0) *
                         std::pow(tau, m * (m - 1) / 2 + index_sum - m * k - k * (k - 1) / 2);
      const cplx qb = q_binomial(k - 1, m - 1, tau);
      const cplx integral = tensor_sum(k, M, [&](const std::size_t* idx) {
        cplx v(1.0), prod(1.0);
        for (int a = 0; a < k; ++a) {
          v *= single[idx[a] * n + members[static_cast<std::size_t>(a)]];
          prod *= g.z[idx[a]];
          for (int b = a + 1; b < k; ++b) v *= cross[idx[a] * M + idx[b]];
        }
        return v * (1.0 - prod);
      });
      total += pre * qb * integral;
    }
    return total;
  });
}

}  // namespace stovex
