#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "stovex/model.hpp"
#include "stovex/tracy_widom.hpp"

namespace stovex {

// G(z) = ln(1 + z kappa/tau) - nu ln(1 + z/tau) + m_nu ln z, principal
// branches. Throws OnBranchCut for real z <= 0.
std::complex<double> g_function(std::complex<double> z, double nu, const ModelParams& p);

struct CriticalData {
  double nu = 0.0;
  double rho = 0.0;
  double g1 = 0.0;  // G'(rho)
  double g2 = 0.0;  // G''(rho)
  double g3 = 0.0;  // G'''(rho)/2
  double sigma_check = 0.0;  // (sigma_nu/rho)^3
};

// Derivatives come from Cauchy integrals of G on a circle around rho.
// Throws QuadratureNotConverged if G', G'' or g3 - sigma_check exceed 1e-9.
CriticalData critical_point(double nu, const ModelParams& p);

struct LlnPoint {
  double x = 0.0;
  double y = 0.0;
  double mean = 0.0;     // of H(Lx, Ly)/L
  double stddev = 0.0;   // sample standard deviation of H(Lx, Ly)/L
  double limit = 0.0;
  double deviation() const { return mean - limit; }
};

struct LlnResult {
  int L = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<LlnPoint> points;
};

LlnResult lln_experiment(const ModelParams& p, int L,
                         const std::vector<std::pair<double, double>>& grid, int samples,
                         std::uint64_t seed, int threads = 1);

// xi_s = (m_nu L - N_{floor(nu L)}(L)) / (sigma_nu L^{1/3}) for each sample.
std::vector<double> fluctuation_samples(const ModelParams& p, double nu, int L, int samples,
                                        std::uint64_t seed, int threads = 1,
                                        int first_index = 0);

struct FluctuationResult {
  double nu = 0.0;
  int L = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> xi;
  std::vector<double> grid;
  std::vector<double> ecdf;
  std::vector<double> f_gue;
  double ks = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

// Empirical CDF of xi and its sup distance to the table on a uniform grid.
void summarize_fluctuations(FluctuationResult& r, const TwTable& tw, int grid_points = 400,
                            double lo = -8.0, double hi = 4.0);

FluctuationResult fluctuation_experiment(const ModelParams& p, double nu, int L, int samples,
                                         std::uint64_t seed, const TwTable& tw,
                                         int threads = 1);

}  // namespace stovex
