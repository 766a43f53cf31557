#include "stovex/model.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "stovex/errors.hpp"

namespace stovex {

namespace {

std::string shortest(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string describe(double a, double b) { return "b1=" + shortest(a) + ", b2=" + shortest(b); }

void require_liquid(double ratio, const ModelParams& p, const char* what) {
  if (!in_liquid_region(ratio, p)) {
    std::ostringstream os;
    os << what << ": ratio " << ratio << " outside (" << p.kappa() << ", " << 1.0 / p.kappa()
       << ")";
    fail(Errc::OutsideLiquidRegion, os.str());
  }
}

}  // namespace

ModelParams ModelParams::validate(double b1, double b2) {
  if (!(b1 > 0.0 && b1 < 1.0) || !(b2 > 0.0 && b2 < 1.0)) {
    fail(Errc::OutOfRange, "weights must lie in (0,1): " + describe(b1, b2));
  }
  if (!(b2 < b1)) {
    fail(Errc::Degenerate, "need b2 < b1: " + describe(b1, b2));
  }
  return ModelParams(b1, b2);
}

ModelParams validate_params(double b1, double b2) { return ModelParams::validate(b1, b2); }

bool in_liquid_region(double ratio, const ModelParams& p) noexcept {
  const double k = p.kappa();
  return ratio > k && ratio < 1.0 / k;
}

double limit_shape_height(double x, double y, const ModelParams& p) {
  if (!(x > 0.0) || !(y > 0.0)) fail(Errc::OutOfDomain, "limit_shape_height needs x>0, y>0");
  const double k = p.kappa();
  const double r = x / y;
  if (r <= k) return 0.0;
  if (r >= 1.0 / k) return x - y;
  const double d = std::sqrt(y * (1.0 - p.b1())) - std::sqrt(x * (1.0 - p.b2()));
  return d * d / (p.b1() - p.b2());
}

double fluctuation_scale_xy(double x, double y, const ModelParams& p) {
  if (!(x > 0.0) || !(y > 0.0)) fail(Errc::OutOfDomain, "fluctuation_scale_xy needs x>0, y>0");
  require_liquid(x / y, p, "fluctuation_scale_xy");
  const double k = p.kappa();
  const double sk = std::sqrt(k);
  return std::pow(k, -1.0 / 3.0) * std::pow(x * y, 1.0 / 6.0) / (1.0 / sk - sk) *
         std::pow((1.0 - std::sqrt(k * x / y)) * (1.0 - std::sqrt(k * y / x)), 2.0 / 3.0);
}

double current_lln(double nu, const ModelParams& p) {
  const double k = p.kappa();
  if (!(nu >= k && nu <= 1.0 / k)) {
    std::ostringstream os;
    os << "current_lln: nu=" << nu << " outside [" << k << ", " << 1.0 / k << "]";
    fail(Errc::OutsideLiquidRegion, os.str());
  }
  const double d = std::sqrt(nu) - std::sqrt(k);
  return d * d / (1.0 - k);
}

double current_scale(double nu, const ModelParams& p) {
  require_liquid(nu, p, "current_scale");
  const double k = p.kappa();
  return std::sqrt(k) * std::pow(nu, -1.0 / 6.0) / (1.0 - k) *
         std::pow((1.0 - std::sqrt(nu * k)) * (std::sqrt(nu / k) - 1.0), 2.0 / 3.0);
}

}  // namespace stovex
