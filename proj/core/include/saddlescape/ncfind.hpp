#pragma once

#include <cstdint>
#include <functional>

#include "saddlescape/oracle.hpp"
#include "saddlescape/rng.hpp"
#include "saddlescape/types.hpp"

namespace saddlescape {

struct NCParams {
  std::int64_t script_T = 1;  // iteration count
  double r = 0.0;             // sampling radius
  double eps = 0.0;
  double delta0 = 1.0;
  double ell = 1.0;           // step constant in the update, normally spec.ell

  void validate() const;
};

struct NCOutcome {
  Vec e_hat;
  std::int64_t steps_used = 0;
  bool renormalized = true;
  int restarts = 0;
  std::int64_t gradient_samples = 0;  // stochastic finders only
};

NCParams derive_nc_params(const SmoothnessSpec& spec, double eps, double delta0, int n);

struct NCFindOptions {
  bool renormalize = true;
  // Called with (t, y_t) for t = 0..script_T; y is the offset from x_tilde.
  std::function<void(std::int64_t, const Vec&)> observer;
};

NCOutcome nc_find(const GradientOracle& oracle, const Vec& x_tilde, const NCParams& params,
                  RngStream& rng, const NCFindOptions& opts = {});

enum class ExploitRule {
  kTwoCandidate,  // better of x0 +- step * e
  kGradientSign,  // x0 - sign(f'_e) * step * e
  kLineSearch,    // two candidates plus doubling search along both signs
};

struct ExploitOptions {
  ExploitRule rule = ExploitRule::kTwoCandidate;
  // Line search: first doubling step (0 means the lemma step).
  double ls_start = 0.0;
  int ls_max_doublings = 40;
};

struct ExploitResult {
  Vec x;
  double f_before = 0.0;
  double f_after = 0.0;
  bool moved = false;
};

// Step length (1/4) sqrt(eps/rho).
double lemma_step(double eps, double rho);
// Guaranteed decrease (1/384) sqrt(eps^3/rho) for a certified direction.
double lemma_decrease(double eps, double rho);

ExploitResult perturb_along_nc(const GradientOracle& oracle, const Vec& x0, const Vec& e_hat,
                               double eps, double rho, const ExploitOptions& opts = {});

// Value-only form. `slope` is f'_e(x0) and is read only by kGradientSign.
ExploitResult perturb_along_nc(const std::function<double(const Vec&)>& f, double slope,
                               const Vec& x0, const Vec& e_hat, double eps, double rho,
                               const ExploitOptions& opts = {});

}  // namespace saddlescape
