// Runs the acceptance criteria and prints one PASS/FAIL line for each.
// Usage: acceptance [--only N] [--threads T]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "stovex/asymptotics.hpp"
#include "stovex/errors.hpp"
#include "stovex/observables.hpp"
#include "stovex/parallel.hpp"
#include "stovex/rng.hpp"
#include "stovex/tracy_widom.hpp"
#include "stovex/verification.hpp"

using namespace stovex;

namespace {

const ModelParams kP = ModelParams::validate(0.6, 0.2);
int g_threads = 1;

struct Criterion {
  int id;
  const char* title;
  double time_limit;  // seconds
  std::function<CheckList()> run;
};

void print_checks(const CheckList& checks) {
  for (const CheckResult& c : checks) {
    std::printf("    %-4s %-34s %.3e (tol %.1e) %s\n", c.passed() ? "ok" : "BAD", c.name.c_str(),
                c.value, c.tolerance, c.detail.c_str());
  }
}

CheckList merge(CheckList a, const CheckList& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

CheckList fredholm_point() {
  const MomentSpec spec{1, 1, 1, {-1.0, 0.0}};
  FredholmOptions o;
  o.threads = g_threads;
  const FredholmResult f = qlaplace_fredholm(spec, kP, o);
  const cplx exact = qlaplace_exact(spec, kP);
  char buf[160];
  std::snprintf(buf, sizeof buf, "det=%.15f%+.2ei exact=%.15f", f.det.real(), f.det.imag(),
                exact.real());
  return {{"det_vs_two_atom_law", std::abs(f.det - exact), 1e-6, buf},
          {"node_doubling", f.doubling, 1e-8, std::to_string(f.circle_nodes) + " x " +
                                                  std::to_string(f.line_nodes) + " nodes"}};
}

CheckList tracy_widom() {
  const TwTable t = tw_table(-10.0, 6.0, 801, 48, g_threads);
  double drop = 0.0;
  for (std::size_t i = 1; i < t.F.size(); ++i) drop = std::max(drop, t.F[i - 1] - t.F[i]);
  char m[64], v[64];
  std::snprintf(m, sizeof m, "mean=%.6f", t.mean());
  std::snprintf(v, sizeof v, "F(-10)=%.2e 1-F(6)=%.2e", t.F.front(), 1.0 - t.F.back());
  return {{"monotone_max_decrease", drop, 0.0, "801 points on [-10, 6]"},
          {"node_doubling", t.max_doubling, 1e-8, "48 -> 96 Gauss-Legendre nodes"},
          {"lower_tail", t.F.front(), 1e-4, v},
          {"upper_tail", 1.0 - t.F.back(), 1e-6, v},
          {"mean", std::fabs(t.mean() + 1.7711), 0.01, m}};
}

CheckList lln() {
  const std::vector<std::pair<double, double>> grid{
      {0.25, 1.0}, {0.4, 1.0}, {1.0, 1.0}, {1.5, 1.0}, {2.5, 1.0}, {3.0, 1.0}};
  const int L = 1000;
  const LlnResult r = lln_experiment(kP, L, grid, 100, kDefaultSeed, g_threads);
  CheckList out;
  for (const LlnPoint& pt : r.points) {
    const double ratio = pt.x / pt.y;
    char buf[128];
    std::snprintf(buf, sizeof buf, "mean=%.6f limit=%.6f sd=%.2e", pt.mean, pt.limit, pt.stddev);
    char name[64];
    std::snprintf(name, sizeof name, "H/L_at_(%g,%g)", pt.x, pt.y);
    const bool frozen = !in_liquid_region(ratio, kP);
    if (frozen) {
      out.push_back({name, std::fabs(pt.deviation()), 3.0 / L, std::string("frozen ") + buf});
    } else if (pt.x == 1.0 && pt.y == 1.0) {
      out.push_back({name, std::fabs(pt.mean - 0.171573), 0.01, buf});
    } else {
      out.push_back({name, std::fabs(pt.deviation()), 0.01, std::string("liquid ") + buf});
    }
  }
  // The average deviation at L must not exceed the one at L/2.
  const LlnResult half = lln_experiment(kP, L / 2, grid, 100, kDefaultSeed + 1, g_threads);
  double avg_full = 0.0, avg_half = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    avg_full += std::fabs(r.points[i].deviation()) / grid.size();
    avg_half += std::fabs(half.points[i].deviation()) / grid.size();
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "avg |dev| L=500: %.5f, L=1000: %.5f", avg_half, avg_full);
  out.push_back({"deviation_shrinks_with_L", avg_full - avg_half, 0.0, buf});
  return out;
}

double average_ks(const std::vector<double>& xi, int groups, const TwTable& tw) {
  const std::size_t n = xi.size() / static_cast<std::size_t>(groups);
  double sum = 0.0;
  for (int g = 0; g < groups; ++g) {
    FluctuationResult r;
    r.xi.assign(xi.begin() + static_cast<std::ptrdiff_t>(g * n),
                xi.begin() + static_cast<std::ptrdiff_t>((g + 1) * n));
    summarize_fluctuations(r, tw);
    sum += r.ks;
  }
  return sum / groups;
}

CheckList fluctuations() {
  const TwTable tw = tw_table(-10.0, 6.0, 801, 48, g_threads);
  const FluctuationResult r = fluctuation_experiment(kP, 1.0, 1000, 4000, kDefaultSeed, tw,
                                                     g_threads);
  char buf[128];
  std::snprintf(buf, sizeof buf, "ks=%.4f mean=%.4f var=%.4f tw_var=%.4f", r.ks, r.mean,
                r.variance, tw.variance());
  const double ratio = r.variance / tw.variance();
  const double ks_1000 = average_ks({r.xi.begin(), r.xi.begin() + 3000}, 3, tw);
  const std::vector<double> small =
      fluctuation_samples(kP, 1.0, 250, 3000, kDefaultSeed + 250, g_threads);
  const double ks_250 = average_ks(small, 3, tw);
  char mono[96];
  std::snprintf(mono, sizeof mono, "mean KS over 3x1000: L=250 %.4f, L=1000 %.4f", ks_250,
                ks_1000);
  return {{"ks_distance", r.ks, 0.15, buf},
          {"mean_offset", std::fabs(r.mean + 1.7711), 0.4, buf},
          {"variance_ratio_out_of_band", std::max({0.0, 0.5 - ratio, ratio - 2.0}), 0.0,
           "ratio=" + std::to_string(ratio)},
          {"ks_improves_with_L", ks_1000 - ks_250, 0.0, mono}};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  g_threads = available_threads();
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::strcmp(argv[i], "--only") == 0) only = std::atoi(argv[i + 1]);
    if (std::strcmp(argv[i], "--threads") == 0) g_threads = std::max(1, std::atoi(argv[i + 1]));
  }

  const std::vector<Criterion> criteria{
      {1, "transfer rows are stochastic", 1, [] { return verify_stochasticity(kP); }},
      {2, "Bethe eigenrelations", 30, [] { return verify_bethe(kP, kDefaultSeed, 50); }},
      {3, "contour transitions and marginals", 120,
       [] { return merge(verify_transition(kP), verify_marginal(kP)); }},
      {4, "q-series and symmetrization identities", 10,
       [] { return verify_identities(kDefaultSeed, 100); }},
      {5, "mu_k nested versus partition form", 60, [] { return verify_mu_k(kP); }},
      {6, "observable routes", 180,
       [] { return verify_observable_routes(kP, 100000, kDefaultSeed, g_threads); }},
      {7, "q-Laplace Fredholm determinant", 60, fredholm_point},
      {8, "Tracy-Widom GUE table", 60, tracy_widom},
      {9, "law of large numbers", 300, lln},
      {10, "GUE fluctuations", 600, fluctuations},
      {11, "lattice and particle models agree", 60,
       [] { return verify_model_equivalence(kP, kDefaultSeed); }},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    CheckList checks;
    std::string error;
    try {
      checks = c.run();
    } catch (const Error& e) {
      error = std::string(to_string(e.code())) + ": " + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double worst = 0.0;
    for (const CheckResult& r : checks) {
      if (r.tolerance > 0.0) worst = std::max(worst, r.value / r.tolerance);
    }
    const bool in_time = secs <= c.time_limit;
    const bool ok = error.empty() && all_passed(checks) && in_time;
    failures += ok ? 0 : 1;
    std::printf("%s [%d] %s: %zu checks, worst value/tol %.3g, %.1f s (limit %.0f s)%s\n",
                ok ? "PASS" : "FAIL", c.id, c.title, checks.size(), worst, secs, c.time_limit,
                in_time ? "" : " over time");
    if (!error.empty()) std::printf("    error %s\n", error.c_str());
    print_checks(checks);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
