#pragma once

#include <optional>
#include <string_view>

#include "saddlescape/oracle.hpp"
#include "saddlescape/rng.hpp"
#include "saddlescape/types.hpp"

namespace saddlescape {

enum class CurvatureMethod { kFdDense, kFdQuadform, kGradPower };

std::string_view to_string(CurvatureMethod m);

struct CurvatureReport {
  double lambda_min_est = 0.0;
  Vec eigvec_est;
  double quad_form = 0.0;  // e^T H e for the returned (or supplied) direction
  CurvatureMethod method = CurvatureMethod::kFdDense;
  std::optional<Vec> spectrum;  // ascending, dense path only
};

struct StationarityVerdict {
  bool grad_ok = false;
  bool curv_ok = false;
  bool is_sosp = false;
  double grad_norm = 0.0;
  double lambda_min = 0.0;
  double tol_curv = 0.0;
};

inline constexpr int kDenseCap = 200;

// cbrt(machine epsilon) * max(1, |x|)
double default_fd_step(const Vec& x);

// <grad(x + h e) - grad(x - h e), e> / (2h)
double fd_quadform(const GradientOracle& oracle, const Vec& x, const Vec& e, double h);

// Central-difference Hessian from gradients, symmetrized.
Mat fd_hessian(const GradientOracle& oracle, const Vec& x, double h);

// h <= 0 selects default_fd_step(x).
CurvatureReport dense_hessian_eig(const GradientOracle& oracle, const Vec& x, double h = 0.0,
                                  int cap = kDenseCap);

// Stationarity test: |grad| <= eps and lambda_min >= -sqrt(rho eps) - 10 rho h.
StationarityVerdict classify(const GradientOracle& oracle, const Vec& x, double eps,
                             double h = 0.0);

// Gradient-only power iteration on (I - H/ell) with central-difference
// Hessian-vector products at a small radius. radius <= 0 picks 1e-4 max(1, |x|).
CurvatureReport grad_power_lambda_min(const GradientOracle& oracle, const Vec& x, int iters,
                                      RngStream& rng, double radius = 0.0);

// |fd(eval) - grad| / max(1, |grad|), central differences with step h (<= 0: default).
double fd_gradient_rel_error(const GradientOracle& oracle, const Vec& x, double h = 0.0);

}  // namespace saddlescape
