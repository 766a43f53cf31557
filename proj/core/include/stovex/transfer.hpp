#pragma once

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "stovex/lattice.hpp"

namespace stovex {

using Positions = std::vector<int>;
using cplx = std::complex<double>;

struct WeightSet {
  double a1 = 1.0, a2 = 1.0, b1 = 0.0, b2 = 0.0, c1 = 0.0, c2 = 0.0;

  static WeightSet stochastic(double b1, double b2);

  // Weights divided by a1; the infinite run of A1 vertices then contributes 1.
  WeightSet gauged() const;
  double weight(VertexType v) const noexcept;

  bool is_stochastic(double tol = 1e-12) const noexcept;
  bool on_gs_line(double tol = 1e-12) const noexcept;  // c1c2 = (a1-b2)(a2-b1)
};

struct RowConfiguration {
  Positions source;
  Positions target;
  int first_column = 0;  // min(x_1, y_1) - 1
  std::vector<VertexType> columns;

  VertexType at(int column) const noexcept;
  int count(VertexType v) const noexcept;
};

// The unique one-row configuration sending X to Y, or nullopt (no path)
// unless x_i <= y_i <= x_{i+1}.
std::optional<RowConfiguration> build_row_configuration(std::span<const int> X,
                                                        std::span<const int> Y);

double transfer_weight(std::span<const int> X, std::span<const int> Y, const WeightSet& w);

struct NormalizedWeights {
  WeightSet weights;
  double per_particle_constant;  // T_original = constant^N * T_normalized
};

NormalizedWeights normalize_weights(const WeightSet& w);

// Sum over Y of T(X -> Y): y_N enumerated up to x_N + tail_cut, the rest
// summed as a geometric series in b2 / a1.
double row_sum(std::span<const int> X, const WeightSet& w, int tail_cut = 4);

struct BoxDistribution {
  std::map<Positions, double> mass;
  double escaped = 0.0;  // weight carried to targets beyond the box
};

// t-fold application of the transfer matrix to dist with targets kept in
// [box_lo, box_hi]. Paths only move right, so in-box values are exact.
BoxDistribution transfer_apply(const std::map<Positions, double>& dist, const WeightSet& w,
                               int steps, int box_lo, int box_hi);

struct BetheResidual {
  cplx lhs;
  cplx rhs;
  double tail_bound = 0.0;
  double residual = 0.0;
};

cplx bethe_eigenvalue(std::span<const cplx> z, const WeightSet& w);
cplx bethe_psi(std::span<const int> X, std::span<const cplx> z, const WeightSet& w);
cplx bethe_phi(std::span<const int> X, std::span<const cplx> z, const WeightSet& w);

// Sum over X of T(X -> Y) Phi(X) against the eigenvalue times Phi(Y). The
// sum over x_1 < y_1 is geometric and summed in closed form.
BetheResidual bethe_check_transposed(std::span<const cplx> z, const WeightSet& w,
                                     std::span<const int> Y);

// Sum over Y of T(X -> Y) Psi(Y) with y_N <= x_N + K; the rigorous bound on
// the dropped tail is added to the residual.
BetheResidual bethe_check_forward(std::span<const cplx> z, const WeightSet& w,
                                  std::span<const int> X, int K);

}  // namespace stovex
