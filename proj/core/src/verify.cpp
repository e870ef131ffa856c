#include "saddlescape/verify.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <string>

namespace saddlescape {

std::string_view to_string(CurvatureMethod m) {
  switch (m) {
    case CurvatureMethod::kFdDense: return "fd-dense";
    case CurvatureMethod::kFdQuadform: return "fd-quadform";
    case CurvatureMethod::kGradPower: return "grad-power";
  }
  return "unknown";
}

double default_fd_step(const Vec& x) {
  return std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, x.norm());
}

double fd_quadform(const GradientOracle& oracle, const Vec& x, const Vec& e, double h) {
  if (!(h > 0.0)) throw ParameterError("finite-difference step must be positive");
  require_unit(e, "quadratic-form direction");
  return (oracle.grad(x + h * e) - oracle.grad(x - h * e)).dot(e) / (2.0 * h);
}

Mat fd_hessian(const GradientOracle& oracle, const Vec& x, double h) {
  if (!(h > 0.0)) throw ParameterError("finite-difference step must be positive");
  const auto n = x.size();
  Mat H(n, n);
  Vec xp = x;
  Vec xm = x;
  for (Eigen::Index j = 0; j < n; ++j) {
    xp[j] = x[j] + h;
    xm[j] = x[j] - h;
    H.col(j) = (oracle.grad(xp) - oracle.grad(xm)) / (2.0 * h);
    xp[j] = x[j];
    xm[j] = x[j];
  }
  return 0.5 * (H + H.transpose());
}

CurvatureReport dense_hessian_eig(const GradientOracle& oracle, const Vec& x, double h, int cap) {
  if (x.size() > cap) {
    throw ParameterError("dimension " + std::to_string(x.size()) + " exceeds the dense cap " +
                         std::to_string(cap) + "; sample directions with fd_quadform instead");
  }
  if (h <= 0.0) h = default_fd_step(x);
  const Mat H = fd_hessian(oracle, x, h);
  if (!H.allFinite()) throw NumericalError("finite-difference Hessian is not finite");
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  if (es.info() != Eigen::Success) throw NumericalError("Hessian eigensolve failed");

  CurvatureReport rep;
  rep.method = CurvatureMethod::kFdDense;
  rep.lambda_min_est = es.eigenvalues()[0];
  Vec u = es.eigenvectors().col(0);
  Eigen::Index imax = 0;
  u.cwiseAbs().maxCoeff(&imax);
  if (u[imax] < 0.0) u = -u;
  rep.eigvec_est = u;
  rep.quad_form = u.dot(H * u);
  rep.spectrum = es.eigenvalues();
  return rep;
}

StationarityVerdict classify(const GradientOracle& oracle, const Vec& x, double eps, double h) {
  if (!(eps > 0.0)) throw ParameterError("eps must be positive");
  if (h <= 0.0) h = default_fd_step(x);
  const SmoothnessSpec spec = oracle.spec();
  StationarityVerdict v;
  v.grad_norm = oracle.grad(x).norm();
  v.grad_ok = v.grad_norm <= eps;
  v.lambda_min = dense_hessian_eig(oracle, x, h).lambda_min_est;
  v.tol_curv = 10.0 * spec.rho * h;
  v.curv_ok = v.lambda_min >= -std::sqrt(spec.rho * eps) - v.tol_curv;
  v.is_sosp = v.grad_ok && v.curv_ok;
  return v;
}

CurvatureReport grad_power_lambda_min(const GradientOracle& oracle, const Vec& x, int iters,
                                      RngStream& rng, double radius) {
  if (iters < 1) throw ParameterError("iteration count must be >= 1");
  if (radius <= 0.0) radius = 1e-4 * std::max(1.0, x.norm());
  const double ell = oracle.spec().ell;
  auto hv = [&](const Vec& u) -> Vec {
    return (oracle.grad(x + radius * u) - oracle.grad(x - radius * u)) / (2.0 * radius);
  };
  Vec y(x.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = rng.normal();
  y.normalize();
  for (int k = 0; k < iters; ++k) {
    y -= hv(y) / ell;
    const double ny = y.norm();
    if (!(ny > 0.0) || !std::isfinite(ny)) throw NumericalError("power iterate degenerated");
    y /= ny;
  }
  CurvatureReport rep;
  rep.method = CurvatureMethod::kGradPower;
  rep.eigvec_est = y;
  rep.quad_form = y.dot(hv(y));
  rep.lambda_min_est = rep.quad_form;
  return rep;
}

double fd_gradient_rel_error(const GradientOracle& oracle, const Vec& x, double h) {
  if (h <= 0.0) h = default_fd_step(x);
  const Vec g = oracle.grad(x);
  Vec fd(x.size());
  Vec xp = x;
  Vec xm = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + h;
    xm[i] = x[i] - h;
    fd[i] = (oracle.eval(xp) - oracle.eval(xm)) / (2.0 * h);
    xp[i] = x[i];
    xm[i] = x[i];
  }
  return (fd - g).norm() / std::max(1.0, g.norm());
}

}  // namespace saddlescape
