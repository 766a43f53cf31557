#include "stovex/transfer.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "stovex/detail/algebra.hpp"
#include "stovex/errors.hpp"

namespace stovex {

using detail::ipow;

namespace {

bool strictly_increasing(std::span<const int> v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] <= v[i - 1]) return false;
  }
  return true;
}

// Calls f(Y) for every Y reachable from X in one row with y_N <= last_max.
void for_each_target(std::span<const int> X, int last_max,
                     const std::function<void(const Positions&)>& f) {
  const std::size_t n = X.size();
  Positions y(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      f(y);
      return;
    }
    const int lo = i > 0 ? std::max(X[i], y[i - 1] + 1) : X[i];
    const int hi = i + 1 < n ? X[i + 1] : last_max;
    for (int v = lo; v <= hi; ++v) {
      y[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

// Calls f(X) for every X with x_1 = first and x_i in [y_{i-1}, y_i], i >= 2.
void for_each_source(std::span<const int> Y, int first,
                     const std::function<void(const Positions&)>& f) {
  const std::size_t n = Y.size();
  Positions x(n);
  x[0] = first;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      f(x);
      return;
    }
    for (int v = std::max(Y[i - 1], x[i - 1] + 1); v <= Y[i]; ++v) {
      x[i] = v;
      rec(i + 1);
    }
  };
  rec(1);
}

struct BetheCoefficients {
  double beta;   // (a2 + b1 b2 - c1 c2) / b1
  double gamma;  // a2 b2 / b1
};

BetheCoefficients coefficients(const WeightSet& g) {
  return {(g.a2 + g.b1 * g.b2 - g.c1 * g.c2) / g.b1, g.a2 * g.b2 / g.b1};
}

void check_denominators(std::span<const cplx> z, const BetheCoefficients& c, double b2) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!(std::abs(b2 * z[i]) < 1.0)) fail(Errc::OutOfDomain, "need |b2 z_i| < 1");
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const cplx d = 1.0 - c.beta * z[j] + c.gamma * z[i] * z[j];
      if (std::abs(d) < 1e-13) {
        std::ostringstream os;
        os << "scattering denominator vanishes for pair (" << i + 1 << "," << j + 1 << ")";
        fail(Errc::DenominatorVanishes, os.str());
      }
    }
  }
}

// A_sigma (forward) or A'_sigma (transposed) for one permutation.
cplx amplitude(const detail::Permutation& s, std::span<const cplx> z, const BetheCoefficients& c,
               bool transposed) {
  cplx num(1.0), den(1.0);
  const std::size_t n = z.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx zi = z[static_cast<std::size_t>(s.map[i])];
      const cplx zj = z[static_cast<std::size_t>(s.map[j])];
      num *= 1.0 - c.beta * (transposed ? zj : zi) + c.gamma * zi * zj;
      den *= 1.0 - c.beta * (transposed ? z[j] : z[i]) + c.gamma * z[i] * z[j];
    }
  }
  return static_cast<double>(s.sign) * num / den;
}

bool has_coincidence(std::span<const cplx> z) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      if (std::abs(z[i] - z[j]) <= 1e-14 * (1.0 + std::abs(z[i]))) return true;
    }
  }
  return false;
}

}  // namespace

WeightSet WeightSet::stochastic(double b1, double b2) {
  return {1.0, 1.0, b1, b2, 1.0 - b1, 1.0 - b2};
}

WeightSet WeightSet::gauged() const {
  if (!(a1 > 0.0)) fail(Errc::OutOfDomain, "a1 must be positive");
  return {1.0, a2 / a1, b1 / a1, b2 / a1, c1 / a1, c2 / a1};
}

double WeightSet::weight(VertexType v) const noexcept {
  switch (v) {
    case VertexType::A1: return a1;
    case VertexType::A2: return a2;
    case VertexType::B1: return b1;
    case VertexType::B2: return b2;
    case VertexType::C1: return c1;
    case VertexType::C2: return c2;
  }
  return 0.0;
}

bool WeightSet::is_stochastic(double tol) const noexcept {
  return std::abs(a1 - 1.0) <= tol && std::abs(a2 - 1.0) <= tol && b1 < 1.0 &&
         std::abs(c1 * c2 - (1.0 - b1) * (1.0 - b2)) <= tol;
}

bool WeightSet::on_gs_line(double tol) const noexcept {
  return std::abs(c1 * c2 - (a1 - b2) * (a2 - b1)) <= tol;
}

VertexType RowConfiguration::at(int column) const noexcept {
  const int k = column - first_column;
  if (k < 0 || k >= static_cast<int>(columns.size())) return VertexType::A1;
  return columns[static_cast<std::size_t>(k)];
}

int RowConfiguration::count(VertexType v) const noexcept {
  return static_cast<int>(std::count(columns.begin(), columns.end(), v));
}

std::optional<RowConfiguration> build_row_configuration(std::span<const int> X,
                                                        std::span<const int> Y) {
  if (X.size() != Y.size() || X.empty()) fail(Errc::OutOfDomain, "X and Y need equal length");
  if (!strictly_increasing(X) || !strictly_increasing(Y)) {
    fail(Errc::OutOfDomain, "positions must be strictly increasing");
  }
  const std::size_t n = X.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (Y[i] < X[i]) return std::nullopt;
    if (i + 1 < n && Y[i] > X[i + 1]) return std::nullopt;
  }
  RowConfiguration r;
  r.source.assign(X.begin(), X.end());
  r.target.assign(Y.begin(), Y.end());
  r.first_column = X[0] - 1;
  const int last = Y[n - 1] + 1;
  std::size_t si = 0, ni = 0, wi = 0, ei = 0;
  for (int c = r.first_column; c <= last; ++c) {
    while (wi < n && Y[wi] < c) ++wi;
    while (ei < n && Y[ei] <= c) ++ei;
    const bool south = si < n && X[si] == c;
    const bool north = ni < n && Y[ni] == c;
    const bool west = wi < n && X[wi] < c && c <= Y[wi];
    const bool east = ei < n && X[ei] <= c && c < Y[ei];
    const auto v = vertex_from_edges({south, west, north, east});
    if (!v) return std::nullopt;
    r.columns.push_back(*v);
    if (south) ++si;
    if (north) ++ni;
  }
  return r;
}

double transfer_weight(std::span<const int> X, std::span<const int> Y, const WeightSet& w) {
  const auto row = build_row_configuration(X, Y);
  if (!row) return 0.0;
  const WeightSet g = w.gauged();
  double t = 1.0;
  for (VertexType v : row->columns) t *= g.weight(v);
  return t;
}

NormalizedWeights normalize_weights(const WeightSet& w) {
  if (std::abs(w.a1 - 1.0) > 1e-12 || !(w.b2 < 1.0) || !w.on_gs_line(1e-12)) {
    std::ostringstream os;
    os.precision(17);
    os << "c1c2=" << w.c1 * w.c2 << " vs (a1-b2)(a2-b1)=" << (w.a1 - w.b2) * (w.a2 - w.b1)
       << ", a1=" << w.a1 << ", b2=" << w.b2;
    fail(Errc::NotOnStochasticLine, os.str());
  }
  const double b1 = w.b1 / w.a2;
  const double b2 = w.b2 / w.a1;
  return {{1.0, 1.0, b1, b2, 1.0 - b1, 1.0 - b2}, w.a2};
}

double row_sum(std::span<const int> X, const WeightSet& w, int tail_cut) {
  const WeightSet g = w.gauged();
  if (!(g.b2 < 1.0)) fail(Errc::OutOfDomain, "row sums diverge for b2/a1 >= 1");
  tail_cut = std::max(tail_cut, 1);
  const int last_max = X.back() + tail_cut;
  double explicit_sum = 0.0, boundary = 0.0;
  for_each_target(X, last_max, [&](const Positions& Y) {
    const double t = transfer_weight(X, Y, g);
    explicit_sum += t;
    if (Y.back() == last_max) boundary += t;
  });
  return explicit_sum + boundary * g.b2 / (1.0 - g.b2);
}

BoxDistribution transfer_apply(const std::map<Positions, double>& dist, const WeightSet& w,
                               int steps, int box_lo, int box_hi) {
  if (steps > 5 || box_hi - box_lo + 1 > 12) {
    fail(Errc::TooLarge, "transfer_apply is limited to t<=5 and box width<=12");
  }
  if (steps < 0 || box_hi < box_lo) fail(Errc::OutOfDomain, "invalid steps or box");
  std::size_t n = 0;
  for (const auto& [x, m] : dist) {
    if (n == 0) n = x.size();
    if (x.size() != n || x.front() < box_lo || x.back() > box_hi || !strictly_increasing(x)) {
      fail(Errc::OutOfDomain, "input state outside the box or of mixed size");
    }
  }
  if (n > 3) fail(Errc::TooLarge, "transfer_apply is limited to N<=3");
  const WeightSet g = w.gauged();
  BoxDistribution out;
  out.mass = dist;
  for (int s = 0; s < steps; ++s) {
    std::map<Positions, double> next;
    for (const auto& [x, m] : out.mass) {
      double kept = 0.0;
      for_each_target(x, box_hi, [&](const Positions& Y) {
        const double t = transfer_weight(x, Y, g);
        kept += t;
        next[Y] += m * t;
      });
      out.escaped += m * (row_sum(x, g) - kept);
    }
    out.mass = std::move(next);
  }
  return out;
}

cplx bethe_eigenvalue(std::span<const cplx> z, const WeightSet& w) {
  const WeightSet g = w.gauged();
  cplx r(1.0);
  for (const cplx& zi : z) r *= (g.b1 + (g.c1 * g.c2 - g.b1 * g.b2) * zi) / (1.0 - g.b2 * zi);
  return r;
}

namespace {

cplx plane_wave_sum(std::span<const int> X, std::span<const cplx> z, const WeightSet& w,
                    bool transposed) {
  const WeightSet g = w.gauged();
  const BetheCoefficients c = coefficients(g);
  cplx total(0.0);
  for (const auto& s : detail::permutations(static_cast<int>(z.size()))) {
    cplx term = amplitude(s, z, c, transposed);
    for (std::size_t i = 0; i < X.size(); ++i) {
      term *= ipow(z[static_cast<std::size_t>(s.map[i])], transposed ? -X[i] : X[i]);
    }
    total += term;
  }
  return total;
}

BetheResidual finish(cplx lhs, cplx rhs, double tail_bound) {
  BetheResidual r{lhs, rhs, tail_bound, 0.0};
  r.residual = (std::abs(lhs - rhs) + tail_bound) / std::abs(rhs);
  return r;
}

}  // namespace

cplx bethe_psi(std::span<const int> X, std::span<const cplx> z, const WeightSet& w) {
  return plane_wave_sum(X, z, w, false);
}

cplx bethe_phi(std::span<const int> X, std::span<const cplx> z, const WeightSet& w) {
  return plane_wave_sum(X, z, w, true);
}

BetheResidual bethe_check_transposed(std::span<const cplx> z, const WeightSet& w,
                                     std::span<const int> Y) {
  if (z.size() != Y.size() || z.empty()) fail(Errc::OutOfDomain, "need |z| = |Y| > 0");
  const WeightSet g = w.gauged();
  const BetheCoefficients c = coefficients(g);
  check_denominators(z, c, g.b2);
  if (has_coincidence(z)) return {};
  const auto perms = detail::permutations(static_cast<int>(z.size()));
  std::vector<cplx> amp;
  for (const auto& s : perms) amp.push_back(amplitude(s, z, c, true));

  cplx lhs(0.0);
  for_each_source(Y, Y[0], [&](const Positions& X) {
    if (strictly_increasing(X)) lhs += transfer_weight(X, Y, g) * bethe_phi(X, z, g);
  });
  for_each_source(Y, Y[0] - 1, [&](const Positions& X) {
    const double t = transfer_weight(X, Y, g);
    if (t == 0.0) return;
    for (std::size_t k = 0; k < perms.size(); ++k) {
      const cplx z1 = z[static_cast<std::size_t>(perms[k].map[0])];
      cplx term = amp[k] * t * ipow(z1, -X[0]) / (1.0 - g.b2 * z1);
      for (std::size_t i = 1; i < X.size(); ++i) {
        term *= ipow(z[static_cast<std::size_t>(perms[k].map[i])], -X[i]);
      }
      lhs += term;
    }
  });
  return finish(lhs, bethe_eigenvalue(z, g) * bethe_phi(Y, z, g), 0.0);
}

BetheResidual bethe_check_forward(std::span<const cplx> z, const WeightSet& w,
                                  std::span<const int> X, int K) {
  if (z.size() != X.size() || z.empty()) fail(Errc::OutOfDomain, "need |z| = |X| > 0");
  if (K < 1) fail(Errc::OutOfDomain, "tail cut K must be positive");
  const WeightSet g = w.gauged();
  const BetheCoefficients c = coefficients(g);
  check_denominators(z, c, g.b2);
  if (has_coincidence(z)) return {};
  const auto perms = detail::permutations(static_cast<int>(z.size()));
  double q = 0.0;
  for (const cplx& zi : z) q = std::max(q, std::abs(g.b2 * zi));

  const int last_max = X.back() + K;
  cplx lhs(0.0);
  double boundary = 0.0;
  for_each_target(X, last_max, [&](const Positions& Y) {
    const double t = transfer_weight(X, Y, g);
    lhs += t * bethe_psi(Y, z, g);
    if (Y.back() == last_max) {
      double mag = 0.0;
      for (const auto& s : perms) {
        double term = std::abs(amplitude(s, z, c, false));
        for (std::size_t i = 0; i < Y.size(); ++i) {
          term *= std::pow(std::abs(z[static_cast<std::size_t>(s.map[i])]), Y[i]);
        }
        mag += term;
      }
      boundary += std::abs(t) * mag;
    }
  });
  return finish(lhs, bethe_eigenvalue(z, g) * bethe_psi(X, z, g), boundary * q / (1.0 - q));
}

}  // namespace stovex
