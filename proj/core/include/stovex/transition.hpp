#pragma once

#include <optional>
#include <span>

#include "stovex/model.hpp"
#include "stovex/quadrature.hpp"

namespace stovex {

struct ContourValue {
  double value = 0.0;     // real part at the finer node count
  double imag = 0.0;      // imaginary part, should vanish
  double doubling = 0.0;  // |I_M - I_{2M}|
  int nodes = 0;          // finer node count
};

// Radius of a circle around the origin that encloses every singularity of
// the transition and marginal integrands, including the cross poles
// 1 - (1 + 1/tau) z_i + z_i z_j / tau = 0 for |z_i| = |z_j|.
double default_transition_radius(const ModelParams& p);

// T_t(Y -> X) for the N-particle system, N <= 3, as an N-fold integral over
// equal circles with the tau-form scattering factors.
ContourValue transition_contour(std::span<const int> Y, std::span<const int> X, int t,
                                const ModelParams& p,
                                const std::optional<ContourSpec>& contour = std::nullopt,
                                double tol = 1e-10);

// P_Y(x_m = x; t) by the subset expansion over S in {1..N}, N <= 3, t <= 4.
ContourValue marginal_contour(std::span<const int> Y, int m, int x, int t, const ModelParams& p,
                              const std::optional<ContourSpec>& contour = std::nullopt,
                              double tol = 1e-10);

}  // namespace stovex
