#include "stovex/airy.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "stovex/errors.hpp"

namespace stovex {

namespace {

constexpr double kSeriesLow = -8.0;
constexpr double kSeriesHigh = 6.0;

// Ai(0) and -Ai'(0).
constexpr long double kC1 = 0.355028053887817239260063186004183176L;
constexpr long double kC2 = 0.258819403792806798405183560189203963L;

AiryValues maclaurin(double xd) {
  if (xd == 0.0) return {static_cast<double>(kC1), static_cast<double>(-kC2)};
  const long double x = xd;
  const long double x3 = x * x * x;
  // f = sum 3^k (1/3)_k x^{3k}/(3k)!, g = sum 3^k (2/3)_k x^{3k+1}/(3k+1)!.
  long double f = 1.0L, g = x, fp = 0.0L, gp = 1.0L;
  long double tf = 1.0L, tg = x;
  for (int k = 1; k < 200; ++k) {
    tf *= x3 / ((3.0L * k - 1.0L) * (3.0L * k));
    tg *= x3 / ((3.0L * k) * (3.0L * k + 1.0L));
    f += tf;
    g += tg;
    fp += tf * (3.0L * k) / x;
    gp += tg * (3.0L * k + 1.0L) / x;
    if (std::fabs(tf) + std::fabs(tg) < 1e-22L * (std::fabs(f) + std::fabs(g) + 1.0L) && k > 3) {
      break;
    }
  }
  return {static_cast<double>(kC1 * f - kC2 * g), static_cast<double>(kC1 * fp - kC2 * gp)};
}

// Coefficients u_k, v_k of the large-argument expansions.
struct AsymptoticCoeffs {
  double u[40];
  double v[40];
  AsymptoticCoeffs() {
    u[0] = 1.0;
    v[0] = 1.0;
    for (int k = 1; k < 40; ++k) {
      u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
             ((2.0 * k - 1.0) * 216.0 * k);
      v[k] = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u[k];
    }
  }
};

const AsymptoticCoeffs& coeffs() {
  static const AsymptoticCoeffs c;
  return c;
}

// Sums c_k (-1)^k z^{-k} over k = start, start+step, ... up to the smallest term.
double alternating(const double* c, double z, int start, int step) {
  double sum = 0.0, last = INFINITY;
  for (int k = start; k < 40; k += step) {
    const int j = (k - start) / step;
    const double term = c[k] * std::pow(z, -k) * (j % 2 == 0 ? 1.0 : -1.0);
    if (std::fabs(term) >= last) break;
    sum += term;
    last = std::fabs(term);
  }
  return sum;
}

AiryValues right_tail(double x) {
  const auto& c = coeffs();
  const double z = 2.0 / 3.0 * x * std::sqrt(x);
  const double e = std::exp(-z) / (2.0 * std::sqrt(std::numbers::pi));
  const double q = std::sqrt(std::sqrt(x));
  return {e / q * alternating(c.u, z, 0, 1), -e * q * alternating(c.v, z, 0, 1)};
}

AiryValues left_tail(double x) {
  const auto& c = coeffs();
  const double y = -x;
  const double z = 2.0 / 3.0 * y * std::sqrt(y);
  const double ph = z - std::numbers::pi / 4.0;
  const double cs = std::cos(ph), sn = std::sin(ph);
  const double q = std::sqrt(std::sqrt(y));
  const double rp = 1.0 / std::sqrt(std::numbers::pi);
  const double ai = rp / q * (cs * alternating(c.u, z, 0, 2) + sn * alternating(c.u, z, 1, 2));
  const double aip = rp * q * (sn * alternating(c.v, z, 0, 2) - cs * alternating(c.v, z, 1, 2));
  return {ai, aip};
}

}  // namespace

AiryValues airy(double x) {
  if (!(x >= -kAiryRange && x <= kAiryRange)) {
    std::ostringstream os;
    os << "airy: x=" << x << " outside [-15, 15]";
    fail(Errc::OutOfSupportedRange, os.str());
  }
  if (x > kSeriesHigh) return right_tail(x);
  if (x < kSeriesLow) return left_tail(x);
  return maclaurin(x);
}

double airy_kernel(double x, const AiryValues& ax, double y, const AiryValues& ay) {
  if (x == y) return ax.aip * ax.aip - x * ax.ai * ax.ai;
  return (ax.ai * ay.aip - ay.ai * ax.aip) / (x - y);
}

double airy_kernel(double x, double y) { return airy_kernel(x, airy(x), y, airy(y)); }

}  // namespace stovex
