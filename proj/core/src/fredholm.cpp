#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <sstream>

#include "stovex/errors.hpp"
#include "stovex/observables.hpp"
#include "stovex/parallel.hpp"
#include "stovex/qseries.hpp"

namespace stovex {

namespace {

const cplx kTwoPiI(0.0, 2.0 * std::numbers::pi);

cplx det_identity_plus(Eigen::MatrixXcd& a, double* hadamard) {
  a += Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  if (hadamard) {
    double h = 1.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i) h *= a.row(i).norm();
    *hadamard = h;
  }
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(a).determinant();
}

void check_zeta(cplx zeta) {
  if (zeta.imag() == 0.0 && zeta.real() >= 0.0) {
    fail(Errc::ZetaOnCut, "zeta must lie off the nonnegative real axis");
  }
}

VerticalLine default_line(cplx zeta, double tol) {
  const double theta = std::abs(std::arg(-zeta));
  return {0.5, std::log(1.0 / tol) / (std::numbers::pi - theta) + 5.0, LineRule::Midpoint};
}

// (-zeta)^s / sin(pi s) * g(w)/g(tau^s w) / (2i), without the 1/(tau^s w - w').
cplx line_factor(cplx s, cplx w, cplx log_mz, int x, int t, const ModelParams& p,
                 cplx* shifted) {
  const cplx ts = std::exp(s * std::log(p.tau()));
  *shifted = ts * w;
  return std::exp(s * log_mz) / std::sin(std::numbers::pi * s) * qlaplace_g(w, x, t, p) /
         qlaplace_g(*shifted, x, t, p) / cplx(0.0, 2.0);
}

Eigen::MatrixXcd assemble(const MomentSpec& spec, const ModelParams& p, double radius, int m,
                          int nl, const VerticalLine& line, int threads) {
  const auto circle = circle_nodes(Circle{0.0, radius, 1}, m);
  const auto segment = ContourSpec{line, nl}.discretize();
  const cplx log_mz = std::log(-spec.zeta);
  const std::size_t n = circle.size();
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  parallel_for(n, threads, [&](std::size_t i) {
    std::vector<cplx> coef(segment.size()), shifted(segment.size());
    for (std::size_t l = 0; l < segment.size(); ++l) {
      coef[l] = line_factor(segment[l].z, circle[i].z, log_mz, spec.x, spec.t, p, &shifted[l]) *
                segment[l].dz;
    }
    for (std::size_t j = 0; j < n; ++j) {
      cplx k(0.0);
      for (std::size_t l = 0; l < segment.size(); ++l) k += coef[l] / (shifted[l] - circle[j].z);
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = k * circle[j].dz / kTwoPiI;
    }
  });
  return a;
}

}  // namespace

cplx fredholm_det(const std::function<cplx(cplx, cplx)>& kernel, const ContourSpec& contour,
                  double* hadamard) {
  const auto nodes = contour.discretize();
  const auto n = static_cast<Eigen::Index>(nodes.size());
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, j) = kernel(nodes[static_cast<std::size_t>(i)].z, nodes[static_cast<std::size_t>(j)].z) *
                nodes[static_cast<std::size_t>(j)].dz / kTwoPiI;
    }
  }
  return det_identity_plus(a, hadamard);
}

cplx qlaplace_kernel(cplx w, cplx wp, int x, int t, cplx zeta, const ModelParams& p,
                     const ContourSpec& line) {
  check_zeta(zeta);
  const cplx log_mz = std::log(-zeta);
  cplx k(0.0);
  for (const QuadNode& q : line.discretize()) {
    cplx shifted;
    const cplx f = line_factor(q.z, w, log_mz, x, t, p, &shifted);
    k += f / (shifted - wp) * q.dz;
  }
  return k;
}

cplx qlaplace_kernel_series(cplx w, cplx wp, int x, int t, cplx zeta, const ModelParams& p,
                            int terms) {
  if (!(std::abs(zeta) < 1.0)) fail(Errc::OutOfDomain, "residue series needs |zeta| < 1");
  const double tau = p.tau();
  const cplx gw = qlaplace_g(w, x, t, p);
  cplx k(0.0), za(1.0);
  double ta = 1.0;
  for (int a = 1; a <= terms; ++a) {
    za *= zeta;
    ta *= tau;
    k -= za * gw / qlaplace_g(ta * w, x, t, p) / (ta * w - wp);
  }
  return k;
}

FredholmResult qlaplace_fredholm(const MomentSpec& spec, const ModelParams& p,
                                 const FredholmOptions& opts) {
  check_zeta(spec.zeta);
  const double tau = p.tau();
  const double r = opts.radius > 0.0 ? opts.radius : 0.5 * tau * (1.0 + 1.0 / p.kappa());
  if (!(r > tau && r < tau / p.kappa())) {
    std::ostringstream os;
    os << "C_r radius " << r << " outside (" << tau << ", " << tau / p.kappa() << ")";
    fail(Errc::OutOfDomain, os.str());
  }
  VerticalLine line = default_line(spec.zeta, opts.tol);
  if (opts.half_height > 0.0) line.half_height = opts.half_height;
  const int nl = opts.line_nodes > 0 ? opts.line_nodes
                                     : static_cast<int>(std::ceil(20.0 * line.half_height));

  FredholmResult res;
  Eigen::MatrixXcd coarse = assemble(spec, p, r, opts.circle_nodes, nl, line,
                                     opts.threads);
  res.det_coarse = det_identity_plus(coarse, nullptr);
  Eigen::MatrixXcd fine = assemble(spec, p, r, 2 * opts.circle_nodes, 2 * nl, line,
                                   opts.threads);
  res.det = det_identity_plus(fine, &res.hadamard);
  res.doubling = std::abs(res.det - res.det_coarse);
  res.circle_nodes = 2 * opts.circle_nodes;
  res.line_nodes = 2 * nl;
  if (!(res.doubling <= opts.doubling_tol)) {
    std::ostringstream os;
    os << "Fredholm determinant changed by " << res.doubling << " under node doubling";
    fail(Errc::QuadratureNotConverged, os.str());
  }
  return res;
}

double moment_from_fredholm(int L, int x, int t, const ModelParams& p, int zeta_nodes,
                            double zeta_radius, int circle_nodes) {
  if (L < 0) fail(Errc::OutOfDomain, "moment order must be nonnegative");
  if (!(zeta_radius > 0.0 && zeta_radius < 1.0)) {
    fail(Errc::OutOfDomain, "zeta circle must lie inside the unit disc");
  }
  const double tau = p.tau();
  const double r = 0.5 * tau * (1.0 + 1.0 / p.kappa());
  const ContourSpec contour = circle_contour(0.0, r, circle_nodes);
  cplx coef(0.0);
  for (int k = 0; k < zeta_nodes; ++k) {
    const cplx e = std::polar(1.0, 2.0 * std::numbers::pi * (k + 0.5) / zeta_nodes);
    const cplx zeta = zeta_radius * e;
    const cplx det = fredholm_det(
        [&](cplx w, cplx wp) { return qlaplace_kernel_series(w, wp, x, t, zeta, p); }, contour);
    coef += det * std::pow(e, -L);
  }
  coef /= static_cast<double>(zeta_nodes) * std::pow(zeta_radius, L);
  return coef.real() * q_pochhammer(tau, tau, L).real();
}

}  // namespace stovex
