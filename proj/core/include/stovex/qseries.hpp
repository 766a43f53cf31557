#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace stovex {

using cplx = std::complex<double>;

// (x; q)_k = prod_{i<k} (1 - x q^i).
cplx q_pochhammer(cplx x, cplx q, int k);

// (x; q)_infinity, truncated once the remaining factors are 1 to within
// rounding; requires |q| < 1.
cplx q_pochhammer_inf(cplx x, cplx q);

// Gaussian binomial (n choose k)_q = (q^{n-k+1}; q)_k / (q; q)_k.
cplx q_binomial(int n, int k, cplx q);

struct IdentityResidual {
  std::string name;
  double max_residual = 0.0;
  int points = 0;
};

// Randomized checks of the q-binomial theorems and the symmetrization
// identities used by the contour formulas.
std::vector<IdentityResidual> identity_suite(std::uint64_t seed, int points = 100);

}  // namespace stovex
