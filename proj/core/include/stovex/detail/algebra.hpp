#pragma once

#include <algorithm>
#include <complex>
#include <numeric>
#include <vector>

namespace stovex::detail {

// Integer power by squaring; negative exponents invert first.
inline std::complex<double> ipow(std::complex<double> z, long n) {
  if (n < 0) {
    z = 1.0 / z;
    n = -n;
  }
  std::complex<double> r(1.0, 0.0);
  while (n) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

inline double ipow(double z, long n) {
  if (n < 0) {
    z = 1.0 / z;
    n = -n;
  }
  double r = 1.0;
  while (n) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

struct Permutation {
  std::vector<int> map;
  int sign;
};

// All permutations of {0..n-1} in lexicographic order with their signs.
inline std::vector<Permutation> permutations(int n) {
  std::vector<Permutation> out;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) inversions += p[i] > p[j];
    }
    out.push_back({p, inversions % 2 ? -1 : 1});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace stovex::detail
