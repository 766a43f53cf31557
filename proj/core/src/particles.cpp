#include "stovex/particles.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <sstream>

#include "stovex/errors.hpp"
#include "stovex/rng.hpp"

namespace stovex {

namespace {

inline int geometric_jump(double v, int gap, double inv_log_b2) {
  if (gap == 1) return 1;
  const double k = 1.0 + std::floor(std::log1p(-v) * inv_log_b2);
  return k >= static_cast<double>(gap) ? gap : static_cast<int>(k);
}

}  // namespace

ParticleState ParticleState::init_step(int n_window) {
  if (n_window <= 0) fail(Errc::OutOfDomain, "init_step needs n_window > 0");
  ParticleState s;
  s.x_.resize(static_cast<std::size_t>(n_window));
  for (int i = 0; i < n_window; ++i) s.x_[static_cast<std::size_t>(i)] = i + 1;
  s.tail_ = true;
  s.tail_exact_ = true;
  s.exact_ = n_window;
  return s;
}

ParticleState ParticleState::finite(std::vector<int> positions) {
  for (std::size_t i = 1; i < positions.size(); ++i) {
    if (positions[i] <= positions[i - 1]) fail(Errc::OutOfDomain, "positions must increase");
  }
  ParticleState s;
  s.x_ = std::move(positions);
  s.exact_ = static_cast<int>(s.x_.size());
  return s;
}

int ParticleState::exact_limit() const noexcept { return tail_ ? exact_ : INT_MAX; }

int ParticleState::count_left(int x) const {
  if (x > exact_limit()) {
    std::ostringstream os;
    os << "N_" << x << " needs the exact window to reach " << x << " (have " << exact_limit()
       << ")";
    fail(Errc::OutsideExactWindow, os.str());
  }
  return static_cast<int>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
}

int ParticleState::occupied(int x) const {
  if (x > exact_limit()) fail(Errc::OutsideExactWindow, "eta outside the exact window");
  return std::binary_search(x_.begin(), x_.end(), x) ? 1 : 0;
}

void ParticleState::truncate(int n) {
  if (!tail_) fail(Errc::OutOfDomain, "truncate applies to tail states only");
  if (n < 1 || n >= size()) return;
  x_.resize(static_cast<std::size_t>(n));
  tail_exact_ = false;
  exact_ = std::min(exact_, n);
}

class StepKernel {
 public:
  static void apply(ParticleState& s, const ModelParams& p, const StepRandomness& r) {
    if (s.tail_) {
      const int next_exact = s.tail_exact_ ? s.size() : s.exact_ - 1;
      if (next_exact < 1) {
        fail(Errc::WindowExhausted, "no particle of the window stays exact after this step");
      }
      s.exact_ = next_exact;
      s.tail_exact_ = false;
    }
    if (r.mode == RandomnessMode::ParticleKeyed) {
      particle_keyed(s, p, r.seed);
    } else {
      site_keyed(s, p, r.seed);
    }
    ++s.t_;
  }

 private:
  static int cap_of(const ParticleState& s, std::size_t i) {
    if (i + 1 < s.x_.size()) return s.x_[i + 1];
    return s.tail_ ? s.x_[i] + 1 : kNoCap;
  }

  static void particle_keyed(ParticleState& s, const ModelParams& p, std::uint64_t seed) {
    const KeyedStream rng(seed, StreamDomain::Particle);
    const double b1 = p.b1();
    const double inv_log_b2 = 1.0 / std::log(p.b2());
    const std::uint64_t row = static_cast<std::uint64_t>(s.t_) + 1;
    int prev = INT_MIN;
    const std::size_t n = s.x_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const int xi = s.x_[i];
      const int cap = cap_of(s, i);
      const int gap = cap == kNoCap ? kNoCap : cap - xi;
      const bool pushed = prev == xi;
      int k;
      if (pushed && gap == 1) {
        k = 1;
      } else {
        const double u = rng.uniform(i + 1, row);
        if (pushed) {
          k = geometric_jump(u, gap, inv_log_b2);
        } else if (u < b1) {
          k = 0;
        } else {
          k = geometric_jump((u - b1) / (1.0 - b1), gap, inv_log_b2);
        }
      }
      s.x_[i] = xi + k;
      prev = s.x_[i];
    }
  }

  static void site_keyed(ParticleState& s, const ModelParams& p, std::uint64_t seed) {
    const KeyedStream rng(seed, StreamDomain::Lattice);
    const double b1 = p.b1();
    const double b2 = p.b2();
    const std::uint64_t row = static_cast<std::uint64_t>(s.t_) + 1;
    int prev = INT_MIN;
    const std::size_t n = s.x_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const int xi = s.x_[i];
      const int cap = cap_of(s, i);
      int pos;
      if (prev == xi) {
        pos = xi + 1;
      } else if (rng.uniform(static_cast<std::uint64_t>(xi), row) < b1) {
        prev = xi;
        continue;
      } else {
        pos = xi + 1;
      }
      while (pos != cap && rng.uniform(static_cast<std::uint64_t>(pos), row) < b2) ++pos;
      s.x_[i] = pos;
      prev = pos;
    }
  }
};

void step_in_place(ParticleState& s, const ModelParams& p, const StepRandomness& rng) {
  StepKernel::apply(s, p, rng);
}

ParticleState step(ParticleState s, const ModelParams& p, const StepRandomness& rng) {
  StepKernel::apply(s, p, rng);
  return s;
}

ParticleState run(const ModelParams& p, int t, int x_max, std::uint64_t seed,
                  RandomnessMode mode) {
  if (t < 0 || x_max <= 0) fail(Errc::OutOfDomain, "run needs t >= 0 and x_max > 0");
  ParticleState s = ParticleState::init_step(x_max + t);
  const StepRandomness r{seed, mode};
  for (int done = 1; done <= t; ++done) {
    step_in_place(s, p, r);
    s.truncate(x_max + t - done);
  }
  return s;
}

double jump_probability(int k, int gap, bool pushed, const ModelParams& p) {
  const double b1 = p.b1();
  const double b2 = p.b2();
  if (k < 0 || (gap != kNoCap && k > gap)) return 0.0;
  if (pushed) {
    if (k == 0) return 0.0;
    if (k < gap) return (1.0 - b2) * std::pow(b2, k - 1);
    return std::pow(b2, k - 1);
  }
  if (k == 0) return b1;
  if (k < gap) return (1.0 - b1) * (1.0 - b2) * std::pow(b2, k - 1);
  return (1.0 - b1) * std::pow(b2, k - 1);
}

namespace {

void enumerate(const std::vector<int>& x, bool tail, std::size_t i, int prev, double weight,
               std::vector<int>& out, const ModelParams& p, int max_free_jump,
               OneStepLaw& result) {
  if (i == x.size()) {
    result.law[out] += weight;
    return;
  }
  const int xi = x[i];
  const int cap = i + 1 < x.size() ? x[i + 1] : (tail ? xi + 1 : kNoCap);
  const int gap = cap == kNoCap ? kNoCap : cap - xi;
  const bool pushed = prev == xi;
  const int kmax = gap == kNoCap ? max_free_jump : gap;
  double kept = 0.0;
  for (int k = pushed ? 1 : 0; k <= kmax; ++k) {
    const double w = jump_probability(k, gap, pushed, p);
    kept += w;
    out[i] = xi + k;
    enumerate(x, tail, i + 1, xi + k, weight * w, out, p, max_free_jump, result);
  }
  if (gap == kNoCap) result.truncated_mass += weight * std::max(0.0, 1.0 - kept);
}

Distribution marginal_prefix(const Distribution& d, std::size_t n) {
  Distribution out;
  for (const auto& [x, w] : d) {
    out[std::vector<int>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n))] += w;
  }
  return out;
}

}  // namespace

OneStepLaw one_step_law(const ParticleState& s, const ModelParams& p, int max_free_jump) {
  OneStepLaw r;
  std::vector<int> out(s.positions().size());
  enumerate(s.positions(), s.has_tail(), 0, INT_MIN, 1.0, out, p, max_free_jump, r);
  return r;
}

Distribution exact_distribution(const ModelParams& p, int t, int x_max) {
  if (t > 4 || x_max > 6) fail(Errc::TooLarge, "exact_distribution is limited to t<=4, x_max<=6");
  if (t < 0 || x_max <= 0) fail(Errc::OutOfDomain, "exact_distribution needs t>=0, x_max>0");
  const int n = x_max + t;
  Distribution current;
  current[ParticleState::init_step(n).positions()] = 1.0;
  for (int done = 1; done <= t; ++done) {
    Distribution next;
    for (const auto& [x, w] : current) {
      std::vector<int> out(x.size());
      OneStepLaw law;
      enumerate(x, true, 0, INT_MIN, w, out, p, 0, law);
      for (const auto& [y, v] : law.law) next[y] += v;
    }
    current = marginal_prefix(next, static_cast<std::size_t>(x_max + t - done));
  }
  return current;
}

}  // namespace stovex
