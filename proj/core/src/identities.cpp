#include <algorithm>
#include <cmath>
#include <functional>

#include "stovex/detail/algebra.hpp"
#include "stovex/qseries.hpp"
#include "stovex/rng.hpp"

namespace stovex {

namespace {

using Vec = std::vector<cplx>;

class PointSource {
 public:
  explicit PointSource(std::uint64_t seed) : rng_(seed, StreamDomain::Test) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(counter_++, 0); }
  cplx box(double s) { return {uniform(-s, s), uniform(-s, s)}; }
  cplx annulus(double lo, double hi) {
    return std::polar(uniform(lo, hi), uniform(0.0, 2.0 * 3.141592653589793));
  }
  Vec boxes(int n, double s) {
    Vec z(static_cast<std::size_t>(n));
    for (auto& v : z) v = box(s);
    return z;
  }

 private:
  KeyedStream rng_;
  std::uint64_t counter_ = 0;
};

// Negative when both sides are sums that cancel by more than a factor 1e6,
// so that the point is redrawn.
double conditioned_rel(cplx lhs, double lhs_mag, cplx rhs, double rhs_mag) {
  const double value = std::max(std::abs(lhs), std::abs(rhs));
  if (value < 1e-6 * std::max(lhs_mag, rhs_mag)) return -1.0;
  return std::abs(lhs - rhs) / value;
}

double rel(cplx lhs, cplx rhs) {
  return std::abs(lhs - rhs) / std::max({std::abs(rhs), std::abs(lhs), 1e-300});
}

// Sum of g over permutations of z; *magnitude receives the sum of |g|.
cplx sym(const Vec& z, const std::function<cplx(const Vec&)>& g, double* magnitude = nullptr) {
  cplx total(0.0);
  double mag = 0.0;
  Vec w(z.size());
  for (const auto& p : detail::permutations(static_cast<int>(z.size()))) {
    for (std::size_t i = 0; i < z.size(); ++i) w[i] = z[static_cast<std::size_t>(p.map[i])];
    const cplx v = g(w);
    total += v;
    mag += std::abs(v);
  }
  if (magnitude) *magnitude = mag;
  return total;
}

// Rejects draws that put a scattering factor or a difference near zero.
bool well_separated(const Vec& z, cplx alpha, bool forward_factor) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (std::abs(1.0 - z[i]) < 0.1) return false;
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (i == j) continue;
      if (std::abs(z[j] - z[i]) < 0.1) return false;
      const cplx lin = forward_factor ? z[i] : z[j];
      if (std::abs(1.0 - (alpha + 1.0) * lin + alpha * z[i] * z[j]) < 0.1) return false;
    }
  }
  return true;
}

IdentityResidual q_binomial_theorem(PointSource& src, int points) {
  IdentityResidual r{"q_binomial_theorem", 0.0, 0};
  for (int p = 0; p < points; ++p) {
    const int n = 1 + p % 8;
    const cplx q = p % 2 ? src.annulus(0.1, 0.9) : src.annulus(1.1, 1.6);
    const cplx t = src.box(1.0);
    cplx lhs(1.0), rhs(0.0);
    for (int i = 0; i < n; ++i) lhs *= 1.0 + detail::ipow(q, i) * t;
    for (int k = 0; k <= n; ++k) {
      rhs += detail::ipow(q, k * (k - 1) / 2) * q_binomial(n, k, q) * detail::ipow(t, k);
    }
    r.max_residual = std::max(r.max_residual, rel(lhs, rhs));
    ++r.points;
  }
  return r;
}

IdentityResidual q_binomial_infinite(PointSource& src, int points) {
  IdentityResidual r{"q_binomial_infinite", 0.0, 0};
  for (int p = 0; p < points; ++p) {
    const cplx q = src.annulus(0.05, 0.8);
    const cplx x = src.annulus(0.05, 0.7);
    const cplx a = src.box(1.5);
    const cplx lhs = q_pochhammer_inf(a * x, q) / q_pochhammer_inf(x, q);
    cplx rhs(0.0), term(1.0);
    for (int k = 0; k < 400; ++k) {
      rhs += term;
      term *= (1.0 - a * detail::ipow(q, k)) / (1.0 - detail::ipow(q, k + 1)) * x;
      if (std::abs(term) < 1e-18 * std::abs(rhs)) break;
    }
    r.max_residual = std::max(r.max_residual, rel(lhs, rhs));
    ++r.points;
  }
  return r;
}

// |1 - scale^{|S|} prod_{k in S} z_k| >= 0.1 for every nonempty subset S.
bool subset_products_clear(const Vec& z, cplx scale) {
  const std::size_t n = z.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    cplx prod(1.0);
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1) prod *= scale * z[k];
    }
    if (std::abs(1.0 - prod) < 0.1) return false;
  }
  return true;
}

cplx cross_product(const Vec& z, cplx alpha, bool inverted) {
  cplx v(1.0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const cplx f = (1.0 - (alpha + 1.0) * z[i] + alpha * z[i] * z[j]) / (z[j] - z[i]);
      v *= inverted ? 1.0 / f : f;
    }
  }
  return v;
}

template <typename Draw, typename Check>
IdentityResidual symmetric_identity(const char* name, int points, Draw draw, Check check) {
  IdentityResidual r{name, 0.0, 0};
  for (int p = 0; p < points; ++p) {
    const int n = 1 + p % 5;
    double res = -1.0;
    while (res < 0.0) {
      Vec z;
      cplx alpha;
      do {
        alpha = draw(z, n);
      } while (!well_separated(z, alpha, true) || !well_separated(z, alpha, false));
      res = check(z, alpha);
    }
    r.max_residual = std::max(r.max_residual, res);
    ++r.points;
  }
  return r;
}

}  // namespace

std::vector<IdentityResidual> identity_suite(std::uint64_t seed, int points) {
  PointSource src(seed);
  std::vector<IdentityResidual> out;
  out.push_back(q_binomial_theorem(src, points));
  out.push_back(q_binomial_infinite(src, points));

  out.push_back(symmetric_identity(
      "tw_symmetrization", points,
      [&](Vec& z, int n) {
        z = src.boxes(n, 0.6);
        for (std::size_t i = 0; i < z.size(); ++i) {
          cplx tail(1.0);
          for (std::size_t k = i; k < z.size(); ++k) tail *= z[k];
          if (std::abs(1.0 - tail) < 0.1) z[i] *= 0.5;
        }
        return src.box(1.0) + 0.3;
      },
      [](const Vec& z, cplx a) {
        const cplx lhs = sym(z, [&](const Vec& w) {
          cplx v = cross_product(w, a, false);
          for (std::size_t i = 0; i < w.size(); ++i) {
            cplx tail(1.0);
            for (std::size_t k = i; k < w.size(); ++k) tail *= w[k];
            v *= detail::ipow(w[i], static_cast<long>(i)) / (1.0 - tail);
          }
          return v;
        });
        cplx rhs(1.0);
        for (const cplx& zi : z) rhs /= 1.0 - zi;
        return rel(lhs, rhs);
      }));

  out.push_back(symmetric_identity(
      "hall_littlewood_symmetrization", points,
      [&](Vec& z, int n) {
        z = src.boxes(n, 2.0);
        return src.box(1.0) + 0.3;
      },
      [](const Vec& z, cplx a) {
        const cplx lhs = sym(z, [&](const Vec& w) { return cross_product(w, a, false); });
        const int n = static_cast<int>(z.size());
        return rel(lhs, q_pochhammer(a, a, n) / detail::ipow(1.0 - a, n));
      }));

  out.push_back(symmetric_identity(
      "inverted_symmetrization", points,
      [&](Vec& z, int n) {
        cplx a;
        do {
          z = src.boxes(n, 1.0);
          a = src.box(1.0) + 0.3;
        } while (!subset_products_clear(z, a));
        return a;
      },
      [](const Vec& z, cplx a) {
        const int n = static_cast<int>(z.size());
        double ml = 0.0, mr = 0.0;
        const cplx lhs = sym(z, [&](const Vec& w) {
          cplx v = cross_product(w, a, true);
          for (std::size_t i = 0; i < w.size(); ++i) {
            cplx tail(1.0);
            for (std::size_t k = i; k < w.size(); ++k) tail *= a * w[k];
            v *= (1.0 - a * w[i]) / (tail - 1.0);
          }
          return v;
        }, &ml);
        const cplx pre = detail::ipow(a - 1.0, n) / q_pochhammer(a, a, n);
        const cplx rhs =
            sym(z, [&](const Vec& w) { return pre * cross_product(w, a, true); }, &mr);
        return conditioned_rel(lhs, ml, rhs, mr);
      }));

  out.push_back(symmetric_identity(
      "tau_form_symmetrization", points,
      [&](Vec& z, int n) {
        cplx tau;
        do {
          z = src.boxes(n, 1.0);
          tau = cplx(src.uniform(0.2, 0.8), src.uniform(-0.2, 0.2));
        } while (!subset_products_clear(z, 1.0) || !well_separated(z, 1.0 / tau, false));
        return tau;
      },
      [](const Vec& xi, cplx tau) {
        const int n = static_cast<int>(xi.size());
        const cplx ti = 1.0 / tau;
        auto cross = [&](const Vec& w) {
          cplx v(1.0);
          for (std::size_t i = 0; i < w.size(); ++i) {
            for (std::size_t j = i + 1; j < w.size(); ++j) {
              v *= (w[j] - w[i]) / (1.0 - (1.0 + ti) * w[j] + ti * w[i] * w[j]);
            }
          }
          return v;
        };
        double ml = 0.0, mr = 0.0;
        const cplx lhs = sym(xi, [&](const Vec& w) {
          cplx v = cross(w), head(1.0);
          for (std::size_t i = 0; i < w.size(); ++i) {
            head *= w[i];
            v *= (1.0 - w[i]) / (head - 1.0);
          }
          return v;
        }, &ml);
        const cplx pre = detail::ipow(tau - 1.0, n) / q_pochhammer(tau, tau, n);
        const cplx rhs = sym(xi, [&](const Vec& w) { return pre * cross(w); }, &mr);
        return conditioned_rel(lhs, ml, rhs, mr);
      }));

  IdentityResidual subset{"tw_subset_sum", 0.0, 0};
  for (int p = 0; p < points; ++p) {
    const int n = 2 + p % 4;
    const int m = 1 + (p / 4) % (n - 1);
    Vec z;
    cplx a;
    do {
      z = src.boxes(n, 1.0);
      a = src.box(1.0) + 1.0;
    } while (!well_separated(z, a, true));
    cplx lhs(0.0), all(1.0);
    for (const cplx& v : z) all *= v;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) != m) continue;
      cplx term(1.0), rest(1.0);
      for (int i = 0; i < n; ++i) {
        if (!(mask >> i & 1u)) {
          rest *= z[static_cast<std::size_t>(i)];
          continue;
        }
        for (int j = 0; j < n; ++j) {
          if (mask >> j & 1u) continue;
          const cplx zi = z[static_cast<std::size_t>(i)], zj = z[static_cast<std::size_t>(j)];
          term *= (1.0 - (1.0 + a) * zi + a * zi * zj) / (zj - zi);
        }
      }
      lhs += term * (1.0 - rest);
    }
    const cplx rhs = detail::ipow(a, m * (n - m)) * q_binomial(n - 1, m, 1.0 / a) * (1.0 - all);
    subset.max_residual = std::max(subset.max_residual, rel(lhs, rhs));
    ++subset.points;
  }
  out.push_back(subset);
  return out;
}

}  // namespace stovex
