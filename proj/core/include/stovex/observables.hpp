#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "stovex/model.hpp"
#include "stovex/quadrature.hpp"

namespace stovex {

struct MomentSpec {
  int L = 1;
  int x = 1;
  int t = 1;
  cplx zeta{-1.0, 0.0};
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int samples = 0;
};

// Mean of tau^{L N_x(t)} over independent runs from the step initial condition.
McEstimate moment_mc(const MomentSpec& spec, const ModelParams& p, int samples,
                     std::uint64_t seed, int threads = 1);

// E[tau^{L N_x(t)}] from the exact distribution (t <= 4, x <= 6).
double moment_exact(const MomentSpec& spec, const ModelParams& p);

// Probabilities of N_x(t) = 0, 1, ..., x from the exact distribution.
std::vector<double> current_law_exact(int x, int t, const ModelParams& p);

// Contour for u_A: circles of radius zero_radius[A] around 0 and
// pole_radius[A] around -tau.
struct NestedContours {
  std::vector<double> zero_radius;
  std::vector<double> pole_radius;
  int nodes = 64;
};

NestedContours default_nested_contours(int L, const ModelParams& p, int nodes = 64);

// Throws ContourFamilyInfeasible unless each u_A contour encloses 0 and
// -tau, excludes -1/kappa, and excludes tau u_B for all u_B on later contours.
void check_nested_contours(const NestedContours& c, const ModelParams& p);

struct ContourEstimate {
  double value = 0.0;
  double imag = 0.0;
  double doubling = 0.0;
};

// E[tau^{L N_x(t)}] as the L-fold nested contour integral, L <= 3.
ContourEstimate moment_contour(const MomentSpec& spec, const ModelParams& p,
                               const NestedContours* contours = nullptr, double tol = 1e-9);

struct MuK {
  double nested = 0.0;
  double partition = 0.0;
  double difference = 0.0;
};

// mu_k as the nested integral and as the sum over partitions of k with
// Cauchy-type determinants on the circle C_r, k <= 3.
MuK mu_k_nested(int k, int x, int t, const ModelParams& p, int nodes = 128, double tol = 1e-9);

// g(z) = (1 + z kappa/tau)^t (1 + z/tau)^{-x}.
cplx qlaplace_g(cplx z, int x, int t, const ModelParams& p);

struct FredholmOptions {
  double radius = 0.0;     // 0: geometric middle of (tau, tau/kappa)
  int circle_nodes = 128;  // trapezoid nodes on C_r
  int line_nodes = 0;      // midpoint nodes on the segment; 0: spacing 0.1
  double half_height = 0.0;  // 0: chosen from tol and arg(-zeta)
  double tol = 1e-14;        // target truncation error of the s-integral
  double doubling_tol = 1e-8;
  int threads = 1;
};

struct FredholmResult {
  cplx det;
  cplx det_coarse;
  double doubling = 0.0;
  double hadamard = 0.0;  // product of row norms of I + K at the finer level
  int circle_nodes = 0;
  int line_nodes = 0;
};

// det(I + K) for a kernel on a contour; entries K(z_i, z_j) dz_j / (2 pi i).
cplx fredholm_det(const std::function<cplx(cplx, cplx)>& kernel, const ContourSpec& contour,
                  double* hadamard = nullptr);

// Kernel of the q-Laplace transform by the truncated Mellin-Barnes integral.
cplx qlaplace_kernel(cplx w, cplx wp, int x, int t, cplx zeta, const ModelParams& p,
                     const ContourSpec& line);

// The same kernel by its residue series, valid for |zeta| < 1.
cplx qlaplace_kernel_series(cplx w, cplx wp, int x, int t, cplx zeta, const ModelParams& p,
                            int terms = 200);

// E[1/(zeta tau^{N_x(t)}; tau)_inf] as a Fredholm determinant on C_r.
FredholmResult qlaplace_fredholm(const MomentSpec& spec, const ModelParams& p,
                                 const FredholmOptions& opts = {});

// E[tau^{L N_x(t)}] as (tau;tau)_L times the zeta^L Taylor coefficient of
// det(I + K_zeta), with K_zeta from the residue series and the coefficient
// from a trapezoid Cauchy integral on |zeta| = zeta_radius < 1.
double moment_from_fredholm(int L, int x, int t, const ModelParams& p, int zeta_nodes = 32,
                            double zeta_radius = 0.5, int circle_nodes = 64);

// E[1/(zeta tau^{N_x(t)}; tau)_inf] from the exact law of N_x(t).
cplx qlaplace_exact(const MomentSpec& spec, const ModelParams& p);

// Sum over k <= kmax of E[tau^{k N_x}] zeta^k / (tau; tau)_k.
cplx qlaplace_series(const MomentSpec& spec, const ModelParams& p, int kmax = 8);

}  // namespace stovex
