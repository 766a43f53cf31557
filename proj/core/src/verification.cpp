#include "stovex/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "stovex/errors.hpp"
#include "stovex/lattice.hpp"
#include "stovex/observables.hpp"
#include "stovex/particles.hpp"
#include "stovex/qseries.hpp"
#include "stovex/rng.hpp"
#include "stovex/transfer.hpp"
#include "stovex/transition.hpp"

namespace stovex {

namespace {

std::string describe(const std::vector<int>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

// Increasing N-tuples with entries in [lo, hi].
std::vector<Positions> increasing_tuples(int n, int lo, int hi) {
  std::vector<Positions> out;
  Positions cur;
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (int v = next; v <= hi; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, lo);
  return out;
}

// Exact law of a finite configuration after t steps; the free last particle
// is enumerated up to max_jump per step and the dropped mass accumulated.
Distribution finite_law(const Positions& y, int t, const ModelParams& p, int max_jump,
                        double* dropped) {
  Distribution cur{{y, 1.0}};
  *dropped = 0.0;
  for (int s = 0; s < t; ++s) {
    Distribution next;
    for (const auto& [x, m] : cur) {
      ParticleState st = ParticleState::finite(x);
      const OneStepLaw law = one_step_law(st, p, max_jump);
      for (const auto& [z, v] : law.law) next[z] += m * v;
      *dropped += m * law.truncated_mass;
    }
    cur = std::move(next);
  }
  return cur;
}

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed, StreamDomain::Test) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(n_++, 1); }

 private:
  KeyedStream rng_;
  std::uint64_t n_ = 0;
};

}  // namespace

bool all_passed(const CheckList& checks) noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed(); });
}

CheckList verify_stochasticity(const ModelParams& p) {
  const WeightSet w = WeightSet::stochastic(p.b1(), p.b2());
  CheckList out;
  for (int n = 1; n <= 2; ++n) {
    CheckResult c{"row_sum_N" + std::to_string(n), 0.0, 1e-12, ""};
    int rows = 0;
    for (const Positions& x : increasing_tuples(n, 1, 8)) {
      const double err = std::fabs(row_sum(x, w) - 1.0);
      if (err > c.value) c.detail = "worst X=" + describe(x);
      c.value = std::max(c.value, err);
      ++rows;
    }
    c.detail += (c.detail.empty() ? "" : ", ") + std::to_string(rows) + " rows";
    out.push_back(c);
  }
  return out;
}

CheckList verify_bethe(const ModelParams& p, std::uint64_t seed, int draws) {
  const WeightSet w = WeightSet::stochastic(p.b1(), p.b2());
  Draws d(seed);
  const double zmax = std::min(2.0, 0.8 / p.b2());
  auto draw_z = [&](int n) {
    std::vector<cplx> z;
    while (static_cast<int>(z.size()) < n) {
      const cplx v = std::polar(d.uniform(0.3, zmax), d.uniform(0.0, 2.0 * std::numbers::pi));
      bool ok = true;
      for (const cplx& u : z) ok = ok && std::abs(u - v) > 0.05;
      if (ok) z.push_back(v);
    }
    return z;
  };
  const std::vector<Positions> targets{{3}, {2, 4}, {1, 3, 4}};
  CheckList out;
  for (int n = 1; n <= 3; ++n) {
    CheckResult c{"bethe_transposed_N" + std::to_string(n), 0.0, 1e-9, ""};
    for (int k = 0; k < draws; ++k) {
      const auto z = draw_z(n);
      const Positions& y = targets[static_cast<std::size_t>(n - 1)];
      try {
        c.value = std::max(c.value, bethe_check_transposed(z, w, y).residual);
      } catch (const Error& e) {
        if (e.code() != Errc::DenominatorVanishes) throw;
        --k;
      }
    }
    c.detail = std::to_string(draws) + " draws, Y=" + describe(targets[n - 1]);
    out.push_back(c);
  }
  const std::vector<Positions> sources{{2}, {1, 3}};
  for (int n = 1; n <= 2; ++n) {
    CheckResult c{"bethe_forward_N" + std::to_string(n), 0.0, 1e-9, ""};
    for (int k = 0; k < draws; ++k) {
      const auto z = draw_z(n);
      try {
        c.value = std::max(c.value,
                           bethe_check_forward(z, w, sources[static_cast<std::size_t>(n - 1)], 60)
                               .residual);
      } catch (const Error& e) {
        if (e.code() != Errc::DenominatorVanishes) throw;
        --k;
      }
    }
    c.detail = std::to_string(draws) + " draws, K=60, X=" + describe(sources[n - 1]);
    out.push_back(c);
  }
  return out;
}

CheckList verify_transition(const ModelParams& p) {
  const WeightSet w = WeightSet::stochastic(p.b1(), p.b2());
  const std::vector<Positions> starts{{1}, {2}, {1, 2}, {1, 3}};
  CheckList out;
  for (int n = 1; n <= 2; ++n) {
    for (int t = 1; t <= 3; ++t) {
      CheckResult c{"transition_N" + std::to_string(n) + "_t" + std::to_string(t), 0.0, 1e-8, ""};
      int pairs = 0;
      for (const Positions& y : starts) {
        if (static_cast<int>(y.size()) != n) continue;
        const int lo = y.front(), hi = y.back() + 4;
        const BoxDistribution oracle = transfer_apply({{y, 1.0}}, w, t, lo, hi);
        for (const Positions& x : increasing_tuples(n, lo, hi)) {
          const auto it = oracle.mass.find(x);
          const double exact = it == oracle.mass.end() ? 0.0 : it->second;
          const ContourValue v = transition_contour(y, x, t, p);
          c.value = std::max({c.value, std::fabs(v.value - exact), std::fabs(v.imag)});
          ++pairs;
        }
      }
      c.detail = std::to_string(pairs) + " (Y,X) pairs";
      out.push_back(c);
    }
  }
  return out;
}

CheckList verify_marginal(const ModelParams& p) {
  const std::vector<Positions> starts{{1}, {1, 2}, {1, 3}, {1, 2, 3}, {2, 3, 5}};
  CheckList out;
  for (const Positions& y : starts) {
    const int n = static_cast<int>(y.size());
    CheckResult c{"marginal_Y" + describe(y), 0.0, 1e-6, ""};
    int cases = 0;
    for (int t = 1; t <= 3; ++t) {
      double dropped = 0.0;
      const Distribution law = finite_law(y, t, p, 16, &dropped);
      for (int m = 1; m <= n; ++m) {
        for (int x = y[m - 1]; x <= y[m - 1] + 4; ++x) {
          double exact = 0.0;
          for (const auto& [z, v] : law) {
            if (z[static_cast<std::size_t>(m - 1)] == x) exact += v;
          }
          const ContourValue v = marginal_contour(y, m, x, t, p);
          c.value = std::max({c.value, std::fabs(v.value - exact) + dropped, std::fabs(v.imag)});
          ++cases;
        }
      }
    }
    c.detail = std::to_string(cases) + " (t,m,x) cases";
    out.push_back(c);
  }
  return out;
}

CheckList verify_identities(std::uint64_t seed, int points) {
  CheckList out;
  for (const IdentityResidual& r : identity_suite(seed, points)) {
    out.push_back({r.name, r.max_residual, 1e-9, std::to_string(r.points) + " points"});
  }
  return out;
}

CheckList verify_mu_k(const ModelParams& p) {
  const std::vector<std::pair<int, int>> sites{{1, 1}, {2, 2}, {3, 2}};
  CheckList out;
  for (int k = 1; k <= 3; ++k) {
    CheckResult c{"mu_k_two_routes_k" + std::to_string(k), 0.0, 1e-7, ""};
    for (const auto& [x, t] : sites) {
      const MuK m = mu_k_nested(k, x, t, p);
      c.value = std::max(c.value, m.difference);
    }
    c.detail = "(x,t) in {(1,1),(2,2),(3,2)}";
    out.push_back(c);
  }
  return out;
}

CheckList verify_fredholm(const ModelParams& p, int threads) {
  CheckList out;
  FredholmOptions opts;
  opts.threads = threads;
  const std::vector<cplx> zetas{{-1.0, 0.0}, {-0.1, 0.0}, {0.0, 0.1}, {-3.0, 1.0}};
  for (const auto& [x, t] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}}) {
    CheckResult agree{"fredholm_vs_exact_x" + std::to_string(x) + "_t" + std::to_string(t), 0.0,
                      1e-6, ""};
    CheckResult dbl{"fredholm_doubling_x" + std::to_string(x) + "_t" + std::to_string(t), 0.0,
                    1e-8, ""};
    for (const cplx& zeta : zetas) {
      const MomentSpec spec{1, x, t, zeta};
      const FredholmResult f = qlaplace_fredholm(spec, p, opts);
      agree.value = std::max(agree.value, std::abs(f.det - qlaplace_exact(spec, p)));
      dbl.value = std::max(dbl.value, f.doubling);
    }
    agree.detail = "zeta in {-1, -0.1, 0.1i, -3+i}";
    dbl.detail = agree.detail;
    out.push_back(agree);
    out.push_back(dbl);
  }
  return out;
}

CheckList verify_observable_routes(const ModelParams& p, int mc_samples, std::uint64_t seed,
                                   int threads) {
  CheckList out;
  for (const auto& [x, t] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}}) {
    for (int L = 1; L <= 2; ++L) {
      const MomentSpec spec{L, x, t, {-1.0, 0.0}};
      const std::string tag =
          "_x" + std::to_string(x) + "_t" + std::to_string(t) + "_L" + std::to_string(L);
      const double exact = moment_exact(spec, p);
      const double nested = moment_contour(spec, p).value;
      const double partition = mu_k_nested(L, x, t, p).partition;
      const double fredholm = moment_from_fredholm(L, x, t, p);
      const double worst = std::max(
          {std::fabs(nested - exact), std::fabs(partition - exact), std::fabs(fredholm - exact)});
      std::ostringstream os;
      os.precision(12);
      os << "exact=" << exact << " nested=" << nested << " partition=" << partition
         << " fredholm=" << fredholm;
      out.push_back({"routes" + tag, worst, 1e-6, os.str()});
      const McEstimate mc = moment_mc(spec, p, mc_samples, seed, threads);
      std::ostringstream ms;
      ms.precision(8);
      ms << "mc=" << mc.mean << " se=" << mc.std_error << " samples=" << mc.samples;
      out.push_back({"monte_carlo_z" + tag, std::fabs(mc.mean - exact) / mc.std_error, 4.0,
                     ms.str()});
    }
  }
  const double target = 1.0 - p.b1() + p.b2();
  const MomentSpec one{1, 1, 1, {-1.0, 0.0}};
  const double v = std::max({std::fabs(moment_exact(one, p) - target),
                             std::fabs(moment_contour(one, p).value - target),
                             std::fabs(mu_k_nested(1, 1, 1, p).partition - target),
                             std::fabs(moment_from_fredholm(1, 1, 1, p) - target)});
  out.push_back({"first_moment_closed_form", v, 1e-6, "E[tau^{N_1(1)}] = 1 - b1 + b2"});
  return out;
}

CheckList verify_model_equivalence(const ModelParams& p, std::uint64_t seed) {
  CheckList out;
  const WeightSet w = WeightSet::stochastic(p.b1(), p.b2());
  CheckResult rows{"one_step_law_vs_transfer_row", 0.0, 1e-12, ""};
  int states = 0;
  for (int n = 1; n <= 3; ++n) {
    for (const Positions& x : increasing_tuples(n, 1, 6)) {
      const OneStepLaw law = one_step_law(ParticleState::finite(x), p, 60);
      for (const Positions& y : increasing_tuples(n, x.front(), x.back() + 6)) {
        const auto it = law.law.find(y);
        const double dp = it == law.law.end() ? 0.0 : it->second;
        rows.value = std::max(rows.value, std::fabs(dp - transfer_weight(x, y, w)));
      }
      ++states;
    }
  }
  rows.detail = std::to_string(states) + " source states, N<=3";
  out.push_back(rows);

  CheckResult coupling{"lattice_cut_vs_site_keyed_run", 0.0, 0.0, ""};
  int runs = 0;
  for (int X = 4; X <= 20; X += 4) {
    for (int t = 1; t <= 10; ++t) {
      for (std::uint64_t r = 0; r < 3; ++r) {
        const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(X * 100 + t * 3) + r);
        const LatticeConfig c = sample_configuration(p, X, std::max(t, 10), s);
        const std::vector<int> cut = particles_at_cut(c, t);
        const ParticleState st = run(p, t, X, s, RandomnessMode::SiteKeyed);
        std::vector<int> sim;
        for (int v : st.positions()) {
          if (v <= X) sim.push_back(v);
        }
        if (sim != cut) coupling.value += 1.0;
        ++runs;
      }
    }
  }
  coupling.detail = std::to_string(runs) + " coupled runs, X<=20, Y=10, t<=10; value = mismatches";
  out.push_back(coupling);
  return out;
}

}  // namespace stovex
