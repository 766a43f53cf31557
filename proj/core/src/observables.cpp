#include "stovex/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "stovex/detail/algebra.hpp"
#include "stovex/errors.hpp"
#include "stovex/parallel.hpp"
#include "stovex/particles.hpp"
#include "stovex/qseries.hpp"
#include "stovex/rng.hpp"

namespace stovex {

using detail::ipow;

namespace {

const cplx kTwoPiI(0.0, 2.0 * std::numbers::pi);

// f(u) = ((1 + u kappa/tau)/(1 + u kappa))^t ((1 + u)/(1 + u/tau))^x.
cplx moment_factor(cplx u, int x, int t, const ModelParams& p) {
  const double tau = p.tau(), k = p.kappa();
  return ipow((1.0 + u * k / tau) / (1.0 + u * k), t) * ipow((1.0 + u) / (1.0 + u / tau), x);
}

struct Nodes {
  std::vector<cplx> z;
  std::vector<cplx> w;
};

Nodes contour_nodes(const std::vector<Circle>& circles, int m,
                    const std::function<cplx(cplx)>& weight) {
  Nodes out;
  for (const Circle& c : circles) {
    for (const QuadNode& q : circle_nodes(c, m)) {
      out.z.push_back(q.z);
      out.w.push_back(q.dz / kTwoPiI * weight(q.z));
    }
  }
  return out;
}

// tau^{L(L-1)/2} sum over the product grid of
// prod_{A<B} (u_A - u_B)/(u_A - tau u_B) prod_A w_A.
cplx nested_sum(const std::vector<Nodes>& dims, double tau) {
  const std::size_t L = dims.size();
  const double pre = std::pow(tau, static_cast<double>(L * (L - 1) / 2));
  auto pair = [tau](cplx a, cplx b) { return (a - b) / (a - tau * b); };
  cplx acc(0.0);
  if (L == 1) {
    for (std::size_t i = 0; i < dims[0].z.size(); ++i) acc += dims[0].w[i];
  } else if (L == 2) {
    for (std::size_t i = 0; i < dims[0].z.size(); ++i) {
      cplx row(0.0);
      for (std::size_t j = 0; j < dims[1].z.size(); ++j) {
        row += pair(dims[0].z[i], dims[1].z[j]) * dims[1].w[j];
      }
      acc += row * dims[0].w[i];
    }
  } else {
    const std::size_t n1 = dims[1].z.size(), n2 = dims[2].z.size();
    std::vector<cplx> p12(n1 * n2);
    for (std::size_t j = 0; j < n1; ++j) {
      for (std::size_t k = 0; k < n2; ++k) {
        p12[j * n2 + k] = pair(dims[1].z[j], dims[2].z[k]) * dims[2].w[k];
      }
    }
    for (std::size_t i = 0; i < dims[0].z.size(); ++i) {
      const cplx a = dims[0].z[i];
      cplx row(0.0);
      for (std::size_t j = 0; j < n1; ++j) {
        const cplx pj = pair(a, dims[1].z[j]) * dims[1].w[j];
        cplx inner(0.0);
        for (std::size_t k = 0; k < n2; ++k) inner += pair(a, dims[2].z[k]) * p12[j * n2 + k];
        row += pj * inner;
      }
      acc += row * dims[0].w[i];
    }
  }
  return pre * acc;
}

cplx nested_value(int L, int x, int t, const ModelParams& p, const NestedContours& c, int m) {
  std::vector<Nodes> dims;
  const double tau = p.tau();
  for (int a = 0; a < L; ++a) {
    const std::vector<Circle> loops = {
        Circle{0.0, c.zero_radius[static_cast<std::size_t>(a)], 1},
        Circle{-tau, c.pole_radius[static_cast<std::size_t>(a)], 1}};
    dims.push_back(contour_nodes(loops, m, [&](cplx u) { return moment_factor(u, x, t, p) / u; }));
  }
  return nested_sum(dims, tau);
}

std::vector<std::vector<int>> partitions(int k, int max_part) {
  if (k == 0) return {{}};
  std::vector<std::vector<int>> out;
  for (int first = std::min(k, max_part); first >= 1; --first) {
    for (auto rest : partitions(k - first, first)) {
      rest.insert(rest.begin(), first);
      out.push_back(rest);
    }
  }
  return out;
}

cplx partition_value(int k, int x, int t, const ModelParams& p, int m) {
  const double tau = p.tau();
  const double r = 0.5 * tau * (1.0 + 1.0 / p.kappa());
  const auto grid = circle_nodes(Circle{0.0, r, 1}, m);
  cplx total(0.0);
  for (const auto& lambda : partitions(k, k)) {
    const std::size_t len = lambda.size();
    double mult = 1.0;
    for (std::size_t i = 0; i < len;) {
      std::size_t j = i;
      while (j < len && lambda[j] == lambda[i]) ++j;
      for (std::size_t f = 2; f <= j - i; ++f) mult *= static_cast<double>(f);
      i = j;
    }
    // per-variable weights g(w)/g(tau^lambda w) dw/(2 pi i)
    std::vector<std::vector<cplx>> weight(len, std::vector<cplx>(grid.size()));
    for (std::size_t i = 0; i < len; ++i) {
      for (std::size_t n = 0; n < grid.size(); ++n) {
        const cplx w = grid[n].z;
        weight[i][n] = qlaplace_g(w, x, t, p) /
                       qlaplace_g(std::pow(tau, lambda[i]) * w, x, t, p) * grid[n].dz / kTwoPiI;
      }
    }
    const auto perms = detail::permutations(static_cast<int>(len));
    const std::size_t m2 = grid.size();
    std::vector<std::vector<cplx>> entry(len, std::vector<cplx>(m2 * m2));
    for (std::size_t i = 0; i < len; ++i) {
      const double scale = std::pow(tau, lambda[i]);
      for (std::size_t a = 0; a < m2; ++a) {
        for (std::size_t b = 0; b < m2; ++b) {
          entry[i][a * m2 + b] = -1.0 / (grid[a].z * scale - grid[b].z);
        }
      }
    }
    std::size_t count = 1;
    for (std::size_t i = 0; i < len; ++i) count *= grid.size();
    cplx integral(0.0);
    std::vector<std::size_t> idx(len);
    for (std::size_t flat = 0; flat < count; ++flat) {
      std::size_t rem = flat;
      cplx w(1.0);
      for (std::size_t d = len; d-- > 0;) {
        idx[d] = rem % grid.size();
        rem /= grid.size();
        w *= weight[d][idx[d]];
      }
      cplx det(0.0);
      for (const auto& perm : perms) {
        cplx term(static_cast<double>(perm.sign));
        for (std::size_t i = 0; i < len; ++i) {
          term *= entry[i][idx[i] * m2 + idx[static_cast<std::size_t>(perm.map[i])]];
        }
        det += term;
      }
      integral += det * w;
    }
    total += integral / mult;
  }
  return q_pochhammer(tau, tau, k) * total;
}

}  // namespace

McEstimate moment_mc(const MomentSpec& spec, const ModelParams& p, int samples,
                     std::uint64_t seed, int threads) {
  if (samples <= 0) fail(Errc::OutOfDomain, "moment_mc needs samples > 0");
  const double tau = p.tau();
  std::vector<double> values(static_cast<std::size_t>(samples));
  parallel_for(values.size(), threads, [&](std::size_t s) {
    int n = 0;
    if (spec.x >= 1) {
      n = run(p, spec.t, spec.x, derive_seed(seed, s)).count_left(spec.x);
    }
    values[s] = std::pow(tau, spec.L * n);
  });
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / samples;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double var = samples > 1 ? ss / (samples - 1) : 0.0;
  return {mean, std::sqrt(var / samples), samples};
}

std::vector<double> current_law_exact(int x, int t, const ModelParams& p) {
  if (x <= 0) return {1.0};
  std::vector<double> law(static_cast<std::size_t>(x) + 1, 0.0);
  for (const auto& [pos, w] : exact_distribution(p, t, x)) {
    law[static_cast<std::size_t>(std::upper_bound(pos.begin(), pos.end(), x) - pos.begin())] += w;
  }
  return law;
}

double moment_exact(const MomentSpec& spec, const ModelParams& p) {
  const auto law = current_law_exact(spec.x, spec.t, p);
  double e = 0.0;
  for (std::size_t n = 0; n < law.size(); ++n) {
    e += law[n] * std::pow(p.tau(), spec.L * static_cast<double>(n));
  }
  return e;
}

NestedContours default_nested_contours(int L, const ModelParams& p, int nodes) {
  if (L < 1) fail(Errc::OutOfDomain, "nested contours need L >= 1");
  const double tau = p.tau();
  const double delta = 0.4 * std::min((tau - tau * tau) / (1.0 + tau), 1.0 / p.kappa() - tau);
  NestedContours c;
  c.nodes = nodes;
  c.zero_radius.assign(static_cast<std::size_t>(L), 0.0);
  c.pole_radius.assign(static_cast<std::size_t>(L), delta);
  double eps = 0.5 * std::min({tau - delta, 1.0 - delta / tau, tau * tau - tau * delta});
  for (int a = L - 1; a >= 0; --a) {
    c.zero_radius[static_cast<std::size_t>(a)] = eps;
    eps *= 0.5 * tau;
  }
  check_nested_contours(c, p);
  return c;
}

void check_nested_contours(const NestedContours& c, const ModelParams& p) {
  const double tau = p.tau();
  const std::size_t L = c.zero_radius.size();
  std::ostringstream why;
  auto bad = [&](const char* what, std::size_t a, std::size_t b) {
    why << what << " (contours " << a + 1 << ", " << b + 1 << ")";
    fail(Errc::ContourFamilyInfeasible, why.str());
  };
  if (c.pole_radius.size() != L || c.nodes <= 0) bad("malformed family", 0, 0);
  for (std::size_t a = 0; a < L; ++a) {
    const double e = c.zero_radius[a], d = c.pole_radius[a];
    if (!(e > 0.0 && d > 0.0)) bad("radii must be positive", a, a);
    if (!(e + d < tau)) bad("loops around 0 and -tau overlap", a, a);
    if (!(d < 1.0 / p.kappa() - tau)) bad("loop around -tau reaches -1/kappa", a, a);
    for (std::size_t b = a + 1; b < L; ++b) {
      const double eb = c.zero_radius[b], db = c.pole_radius[b];
      if (!(tau * eb > e)) bad("tau times the outer zero loop enters the inner zero loop", a, b);
      if (!(tau * eb + d < tau)) bad("tau times the outer zero loop meets the pole loop", a, b);
      if (!(tau * tau - tau * db > e)) bad("tau times the pole loop meets the zero loop", a, b);
      if (!(tau - tau * tau - tau * db > d)) bad("tau times the pole loop meets the pole loop", a, b);
    }
  }
}

ContourEstimate moment_contour(const MomentSpec& spec, const ModelParams& p,
                               const NestedContours* contours, double tol) {
  if (spec.L < 0) fail(Errc::OutOfDomain, "moment order must be nonnegative");
  if (spec.L == 0) return {1.0, 0.0, 0.0};
  if (spec.L > 3) fail(Errc::TooLarge, "moment_contour is limited to L<=3");
  const NestedContours c = contours ? *contours : default_nested_contours(spec.L, p);
  check_nested_contours(c, p);
  const cplx coarse = nested_value(spec.L, spec.x, spec.t, p, c, c.nodes);
  const cplx fine = nested_value(spec.L, spec.x, spec.t, p, c, 2 * c.nodes);
  ContourEstimate r{fine.real(), fine.imag(), std::abs(fine - coarse)};
  if (!(r.doubling <= tol)) {
    std::ostringstream os;
    os << "nested contour doubling changed the value by " << r.doubling;
    fail(Errc::QuadratureNotConverged, os.str());
  }
  return r;
}

MuK mu_k_nested(int k, int x, int t, const ModelParams& p, int nodes, double tol) {
  if (k < 1 || k > 3) fail(Errc::TooLarge, "mu_k_nested is limited to 1<=k<=3");
  const ContourEstimate nested = moment_contour({k, x, t, {}}, p, nullptr, tol);
  const cplx coarse = partition_value(k, x, t, p, nodes);
  const cplx fine = partition_value(k, x, t, p, 2 * nodes);
  if (!(std::abs(fine - coarse) <= tol)) {
    std::ostringstream os;
    os << "partition expansion doubling changed mu_" << k << " by " << std::abs(fine - coarse);
    fail(Errc::QuadratureNotConverged, os.str());
  }
  return {nested.value, fine.real(), std::abs(nested.value - fine.real())};
}

cplx qlaplace_g(cplx z, int x, int t, const ModelParams& p) {
  const double tau = p.tau();
  return ipow(1.0 + z * p.kappa() / tau, t) * ipow(1.0 + z / tau, -x);
}

cplx qlaplace_exact(const MomentSpec& spec, const ModelParams& p) {
  const auto law = current_law_exact(spec.x, spec.t, p);
  const double tau = p.tau();
  cplx e(0.0);
  for (std::size_t n = 0; n < law.size(); ++n) {
    if (law[n] == 0.0) continue;
    e += law[n] / q_pochhammer_inf(spec.zeta * std::pow(tau, static_cast<double>(n)), tau);
  }
  return e;
}

cplx qlaplace_series(const MomentSpec& spec, const ModelParams& p, int kmax) {
  const double tau = p.tau();
  cplx s(0.0);
  for (int k = 0; k <= kmax; ++k) {
    const double mu = moment_exact({k, spec.x, spec.t, spec.zeta}, p);
    s += mu * ipow(spec.zeta, k) / q_pochhammer(tau, tau, k);
  }
  return s;
}

}  // namespace stovex
