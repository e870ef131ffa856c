#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "saddlescape/ncfind.hpp"
#include "saddlescape/oracle.hpp"
#include "saddlescape/rng.hpp"
#include "saddlescape/trace.hpp"

namespace saddlescape {

struct ANCParams {
  double eta = 0.0;
  double theta = 0.0;
  double gamma = 0.0;
  double s = 0.0;
  std::int64_t script_T_prime = 1;
  double r_prime = 0.0;
  double eps = 0.0;
  double rho = 0.0;
  double delta0 = 1.0;
  std::int64_t T_total = 1;
  ExploitOptions exploit;
  RunControls controls;

  void validate() const;
};

ANCParams derive_anc_params(const SmoothnessSpec& spec, double eps, double delta0, int n,
                            double delta_f_bound, double c_A = 8.0);

struct AGDState {
  Vec x;
  Vec v;
  Vec z;
  std::optional<std::int64_t> t_perturb;
  Vec x_saddle;
  Vec zeta;
  std::int64_t t = 0;
};

// E = f(x) + |v|^2 / (2 eta)
double hamiltonian(double f, const Vec& v, double eta);

// Returns (x', v') with v' = 0. Moves x to the better of x +- s v/|v| when |v| < s.
std::pair<Vec, Vec> nce_step(const GradientOracle& oracle, const Vec& x, const Vec& v, double s);

struct ANCFindOptions {
  // Called with (k, x_k, z_k) after each of the script_T_prime window steps.
  std::function<void(std::int64_t, const Vec&, const Vec&)> observer;
};

// The accelerated negative curvature phase on its own: uniform start in the
// r'-ball, script_T_prime momentum steps pinned to radius r', unit output.
NCOutcome anc_find(const GradientOracle& oracle, const Vec& x_tilde, const ANCParams& params,
                   RngStream& rng, const ANCFindOptions& opts = {});

Trace ancgd_run(const GradientOracle& oracle, const Vec& x0, const ANCParams& params,
                RngStream& rng);

}  // namespace saddlescape
