#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stovex/model.hpp"

namespace stovex {

struct CheckResult {
  std::string name;
  double value = 0.0;  // residual or distance
  double tolerance = 0.0;
  std::string detail;
  bool passed() const noexcept { return value <= tolerance; }
};

using CheckList = std::vector<CheckResult>;

bool all_passed(const CheckList& checks) noexcept;

// Row sums of the stochastic transfer matrix for N <= 2 on a position box.
CheckList verify_stochasticity(const ModelParams& p);

// Eigenrelations for the transposed (N <= 3) and forward (N <= 2, K = 60)
// actions at random spectral parameters.
CheckList verify_bethe(const ModelParams& p, std::uint64_t seed, int draws = 50);

// Contour transition probabilities against transfer-matrix powers.
CheckList verify_transition(const ModelParams& p);

// One-particle marginals against the exact finite-N particle law.
CheckList verify_marginal(const ModelParams& p);

CheckList verify_identities(std::uint64_t seed, int points = 100);

// Nested-contour and partition forms of E[tau^{k N_x(t)}], k <= 3.
CheckList verify_mu_k(const ModelParams& p);

// q-Laplace transform: Fredholm determinant against the exact law,
// with the node-doubling difference.
CheckList verify_fredholm(const ModelParams& p, int threads = 1);

// E[tau^{L N_x(t)}] by the exact law, nested contours, partition form,
// Fredholm coefficient extraction and Monte Carlo.
CheckList verify_observable_routes(const ModelParams& p, int mc_samples, std::uint64_t seed,
                                   int threads = 1);

// Exact one-step particle law against transfer rows, and the lattice cut
// against site-keyed particle runs.
CheckList verify_model_equivalence(const ModelParams& p, std::uint64_t seed);

}  // namespace stovex
