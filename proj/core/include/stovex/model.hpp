#pragma once

namespace stovex {

// Stochastic weights 0 < b2 < b1 < 1 with the derived ratios
// tau = b2/b1 and kappa = (1-b1)/(1-b2).
class ModelParams {
 public:
  static ModelParams validate(double b1, double b2);

  double b1() const noexcept { return b1_; }
  double b2() const noexcept { return b2_; }
  double tau() const noexcept { return b2_ / b1_; }
  double kappa() const noexcept { return (1.0 - b1_) / (1.0 - b2_); }

 private:
  ModelParams(double b1, double b2) : b1_(b1), b2_(b2) {}
  double b1_;
  double b2_;
};

ModelParams validate_params(double b1, double b2);

// Limit shape of H(Lx, Ly)/L. Boundary rays belong to the frozen sectors.
double limit_shape_height(double x, double y, const ModelParams& p);

// Scale of the L^{1/3} fluctuations of H(Lx, Ly) in the liquid sector.
double fluctuation_scale_xy(double x, double y, const ModelParams& p);

// m_nu, the limit of N_{nu L}(L)/L. Accepts the closed interval [kappa, 1/kappa].
double current_lln(double nu, const ModelParams& p);

// sigma_nu, the fluctuation scale of N_{nu L}(L). Open interval only.
double current_scale(double nu, const ModelParams& p);

bool in_liquid_region(double ratio, const ModelParams& p) noexcept;

}  // namespace stovex
