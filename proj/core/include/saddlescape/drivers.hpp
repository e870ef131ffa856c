#pragma once

#include <cstdint>

#include "saddlescape/ncfind.hpp"
#include "saddlescape/oracle.hpp"
#include "saddlescape/rng.hpp"
#include "saddlescape/trace.hpp"

namespace saddlescape {

struct PGDNCParams {
  NCParams nc;
  std::int64_t T_total = 1;
  double delta = 0.0;
  double delta0 = 0.0;
  double delta_f = 0.0;
  double eps = 0.0;
  double rho = 0.0;
  double eta = 0.0;                 // GD step, normally 1/ell
  bool cooldown = false;            // skip re-entry for script_T steps after an NCF call
  std::int64_t max_nc_calls = 0;    // 0 = unlimited
  ExploitOptions exploit;
  RunControls controls;

  void validate() const;
};

// delta0 = (delta / (384 delta_f)) sqrt(eps^3 / rho)
double derive_delta0(double delta, double delta_f, double eps, double rho);

PGDNCParams derive_pgdnc_params(const SmoothnessSpec& spec, double eps, double delta, int n,
                                double delta_f);

Trace pgd_nc_run(const GradientOracle& oracle, const Vec& x0, const PGDNCParams& params,
                 RngStream& rng);

struct BaselineParams {
  double eta = 0.0;
  double r = 0.0;          // ball radius (PGD/PAGD) or Gaussian scale (PSGD); 0 disables
  double g_thresh = 0.0;   // perturb when the gradient norm is at most this
  std::int64_t t_thresh = 0;  // cooldown between perturbations
  std::int64_t T_total = 1;
  // PAGD only.
  double theta = 0.0;
  double gamma = 0.0;
  double s = 0.0;
  // PSGD only.
  std::int64_t M = 1;
  RunControls controls;

  void validate() const;
};

Trace pgd_run(const GradientOracle& oracle, const Vec& x0, const BaselineParams& params,
              RngStream& rng);
Trace pagd_run(const GradientOracle& oracle, const Vec& x0, const BaselineParams& params,
               RngStream& rng);
Trace psgd_run(const StochasticOracle& oracle, const Vec& x0, const BaselineParams& params,
               RngStream& rng);

}  // namespace saddlescape
