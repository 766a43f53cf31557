#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <vector>

#include "stovex/model.hpp"

namespace stovex {

// Positions x_1 < ... < x_n. With a tail, particles n+1, n+2, ... are taken
// to sit at x_n + 1, x_n + 2, ...; this is the true configuration only at
// t = 0 (step initial condition), so exactness of the explicit particles
// shrinks by one index per step after the first.
class ParticleState {
 public:
  static ParticleState init_step(int n_window);
  static ParticleState finite(std::vector<int> positions);

  int time() const noexcept { return t_; }
  const std::vector<int>& positions() const noexcept { return x_; }
  int size() const noexcept { return static_cast<int>(x_.size()); }
  bool has_tail() const noexcept { return tail_; }
  int tail_start() const noexcept { return x_.empty() ? 1 : x_.back() + 1; }

  // Leading particles that agree with the untruncated system.
  int exact_count() const noexcept { return exact_; }
  // N_x and eta_x are exact for x <= exact_limit().
  int exact_limit() const noexcept;

  int count_left(int x) const;  // N_x
  int occupied(int x) const;    // eta_x

  // Drops particles beyond index n (tail states only).
  void truncate(int n);

 private:
  friend class StepKernel;
  int t_ = 0;
  std::vector<int> x_;
  bool tail_ = false;
  bool tail_exact_ = false;
  int exact_ = 0;
};

enum class RandomnessMode {
  // One inverse-CDF uniform per (particle index, time).
  ParticleKeyed,
  // Site uniforms keyed by (x, y = t+1), shared with sample_configuration.
  SiteKeyed,
};

struct StepRandomness {
  std::uint64_t seed;
  RandomnessMode mode = RandomnessMode::ParticleKeyed;
};

void step_in_place(ParticleState& s, const ModelParams& p, const StepRandomness& rng);
ParticleState step(ParticleState s, const ModelParams& p, const StepRandomness& rng);

// t steps from the step initial condition on a window of x_max + t
// particles; particles 1..x_max are exact at the end.
ParticleState run(const ModelParams& p, int t, int x_max, std::uint64_t seed,
                  RandomnessMode mode = RandomnessMode::ParticleKeyed);

using Distribution = std::map<std::vector<int>, double>;

// Exact law of (x_1(t), ..., x_{x_max}(t)) from the step initial condition.
Distribution exact_distribution(const ModelParams& p, int t, int x_max);

struct OneStepLaw {
  Distribution law;
  double truncated_mass = 0.0;  // free last particle jumping beyond the cap
};

// Exact one-step law from s. A free last particle (no tail) is enumerated
// up to max_free_jump; the remaining mass is reported, not distributed.
OneStepLaw one_step_law(const ParticleState& s, const ModelParams& p, int max_free_jump);

// Single-particle jump law used by step; gap = kNoCap for a free particle.
inline constexpr int kNoCap = INT_MAX;
double jump_probability(int k, int gap, bool pushed, const ModelParams& p);

}  // namespace stovex
