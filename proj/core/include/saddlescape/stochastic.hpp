#pragma once

#include <cstdint>
#include <functional>

#include "saddlescape/ncfind.hpp"
#include "saddlescape/oracle.hpp"
#include "saddlescape/rng.hpp"
#include "saddlescape/trace.hpp"

namespace saddlescape {

struct SNCParams {
  std::int64_t script_T_s = 1;
  double iota = 0.0;
  double r_s = 0.0;
  std::int64_t m = 1;
  double m_exact = 1.0;  // value before the ceiling
  double delta = 0.0;
  double eps = 0.0;
  double rho = 0.0;
  double ell = 1.0;      // step constant, normally spec.ell
  int fixed_point_rounds = 0;

  void validate() const;
};

struct SGDNCParams {
  SNCParams snc;
  std::int64_t M = 1;
  std::int64_t T_total = 1;
  double delta_s = 0.0;
  double delta_f = 0.0;
  double eps = 0.0;
  double rho = 0.0;
  double eta = 0.0;            // SGD step, normally 1/ell
  bool single_sample = false;  // step with one fresh sample instead of the M-batch mean
  ExploitOptions exploit;
  RunControls controls;

  void validate() const;
};

struct ScaleLedger {
  double L = 0.0;      // +inf once past the double range
  double log_L = 0.0;
};

SNCParams derive_snc_params(const SmoothnessSpec& spec, double ell_tilde, double eps,
                            double delta, int n);

SGDNCParams derive_sgdnc_params(const SmoothnessSpec& spec, double ell_tilde, double eps,
                                double delta_s, int n, double delta_f);

struct SNCFindOptions {
  // Called after step t with (t, y_t or z_t, L_t, pre-normalization norm of y_t).
  // The unnormalized variant passes L_t = 0.
  std::function<void(std::int64_t, const Vec&, double, double)> observer;
  ScaleLedger* ledger_out = nullptr;
};

NCOutcome snc_find(const StochasticOracle& oracle, const Vec& x0, const SNCParams& params,
                   RngStream& rng, const SNCFindOptions& opts = {});

NCOutcome snc_find_unnormalized(const StochasticOracle& oracle, const Vec& x0,
                                const SNCParams& params, RngStream& rng,
                                const SNCFindOptions& opts = {});

Trace sgd_nc_run(const StochasticOracle& oracle, const Vec& x0, const SGDNCParams& params,
                 RngStream& rng);

}  // namespace saddlescape
