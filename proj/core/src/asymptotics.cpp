#include "stovex/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "stovex/errors.hpp"
#include "stovex/lattice.hpp"
#include "stovex/parallel.hpp"
#include "stovex/particles.hpp"
#include "stovex/rng.hpp"

namespace stovex {

using cplx = std::complex<double>;

cplx g_function(cplx z, double nu, const ModelParams& p) {
  if (z.imag() == 0.0 && z.real() <= 0.0) {
    fail(Errc::OnBranchCut, "G(z) is evaluated off the real half-line z <= 0");
  }
  const double tau = p.tau();
  const double m = current_lln(nu, p);
  return std::log(1.0 + z * p.kappa() / tau) - nu * std::log(1.0 + z / tau) + m * std::log(z);
}

CriticalData critical_point(double nu, const ModelParams& p) {
  if (!in_liquid_region(nu, p)) {
    std::ostringstream os;
    os << "critical_point: nu=" << nu << " outside (" << p.kappa() << ", " << 1.0 / p.kappa()
       << ")";
    fail(Errc::OutsideLiquidRegion, os.str());
  }
  const double k = p.kappa();
  CriticalData d;
  d.nu = nu;
  d.rho = -p.tau() * (1.0 - std::sqrt(nu / k)) / (1.0 - std::sqrt(nu * k));

  constexpr int kNodes = 64;
  const double r = 0.2 * d.rho;
  cplx c1(0.0), c2(0.0), c3(0.0);
  for (int j = 0; j < kNodes; ++j) {
    const cplx e = std::polar(1.0, 2.0 * std::numbers::pi * j / kNodes);
    const cplx g = g_function(d.rho + r * e, nu, p);
    c1 += g / e;
    c2 += g / (e * e);
    c3 += g / (e * e * e);
  }
  d.g1 = c1.real() / (kNodes * r);
  d.g2 = 2.0 * c2.real() / (kNodes * r * r);
  d.g3 = 3.0 * c3.real() / (kNodes * r * r * r);
  const double q = current_scale(nu, p) / d.rho;
  d.sigma_check = q * q * q;
  const double worst =
      std::max({std::fabs(d.g1), std::fabs(d.g2), std::fabs(d.g3 - d.sigma_check)});
  if (!(worst <= 1e-9)) {
    std::ostringstream os;
    os << "critical point checks failed at nu=" << nu << ": residual " << worst;
    fail(Errc::QuadratureNotConverged, os.str());
  }
  return d;
}

LlnResult lln_experiment(const ModelParams& p, int L,
                         const std::vector<std::pair<double, double>>& grid, int samples,
                         std::uint64_t seed, int threads) {
  if (L < 1 || samples < 1 || grid.empty()) {
    fail(Errc::InvalidArgument, "lln_experiment needs L>=1, samples>=1, nonempty grid");
  }
  double xmax = 0.0, ymax = 0.0;
  for (const auto& [x, y] : grid) {
    if (!(x > 0.0) || !(y > 0.0)) fail(Errc::OutOfDomain, "grid points need x>0, y>0");
    xmax = std::max(xmax, x);
    ymax = std::max(ymax, y);
  }
  const int X = static_cast<int>(std::ceil(L * xmax));
  const int Y = static_cast<int>(std::ceil(L * ymax));
  std::vector<std::vector<double>> h(static_cast<std::size_t>(samples));
  parallel_for(static_cast<std::size_t>(samples), threads, [&](std::size_t s) {
    const LatticeConfig c = sample_configuration(p, X, Y, derive_seed(seed, s));
    auto& row = h[s];
    for (const auto& [x, y] : grid) row.push_back(height_function(c, L * x, L * y) / double(L));
  });
  LlnResult r;
  r.L = L;
  r.samples = samples;
  r.seed = seed;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    LlnPoint pt;
    pt.x = grid[g].first;
    pt.y = grid[g].second;
    double sum = 0.0;
    for (const auto& row : h) sum += row[g];
    pt.mean = sum / samples;
    double ss = 0.0;
    for (const auto& row : h) ss += (row[g] - pt.mean) * (row[g] - pt.mean);
    pt.stddev = samples > 1 ? std::sqrt(ss / (samples - 1)) : 0.0;
    pt.limit = limit_shape_height(pt.x, pt.y, p);
    r.points.push_back(pt);
  }
  return r;
}

std::vector<double> fluctuation_samples(const ModelParams& p, double nu, int L, int samples,
                                        std::uint64_t seed, int threads, int first_index) {
  if (L < 1 || samples < 1) fail(Errc::InvalidArgument, "fluctuation_samples needs L, S >= 1");
  const double m = current_lln(nu, p);
  const double sigma = current_scale(nu, p);
  const int x = static_cast<int>(std::floor(nu * L));
  const double scale = sigma * std::cbrt(static_cast<double>(L));
  std::vector<double> xi(static_cast<std::size_t>(samples));
  parallel_for(xi.size(), threads, [&](std::size_t s) {
    const auto id = static_cast<std::uint64_t>(first_index) + s;
    const ParticleState st = run(p, L, x, derive_seed(seed, id));
    xi[s] = (m * L - st.count_left(x)) / scale;
  });
  return xi;
}

void summarize_fluctuations(FluctuationResult& r, const TwTable& tw, int grid_points, double lo,
                            double hi) {
  if (r.xi.empty()) fail(Errc::InvalidArgument, "no fluctuation samples");
  std::vector<double> sorted = r.xi;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double sum = 0.0;
  for (double v : r.xi) sum += v;
  r.mean = sum / n;
  double ss = 0.0;
  for (double v : r.xi) ss += (v - r.mean) * (v - r.mean);
  r.variance = sorted.size() > 1 ? ss / (n - 1.0) : 0.0;
  r.grid.clear();
  r.ecdf.clear();
  r.f_gue.clear();
  r.ks = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double s = lo + (hi - lo) * i / (grid_points - 1);
    const auto below = std::upper_bound(sorted.begin(), sorted.end(), s) - sorted.begin();
    const double e = below / n;
    const double f = tw(s);
    r.grid.push_back(s);
    r.ecdf.push_back(e);
    r.f_gue.push_back(f);
    r.ks = std::max(r.ks, std::fabs(e - f));
  }
}

FluctuationResult fluctuation_experiment(const ModelParams& p, double nu, int L, int samples,
                                         std::uint64_t seed, const TwTable& tw, int threads) {
  FluctuationResult r;
  r.nu = nu;
  r.L = L;
  r.samples = samples;
  r.seed = seed;
  r.xi = fluctuation_samples(p, nu, L, samples, seed, threads);
  summarize_fluctuations(r, tw);
  return r;
}

}  // namespace stovex
