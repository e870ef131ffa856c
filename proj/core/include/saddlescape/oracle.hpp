#pragma once

#include <cstdint>

#include "saddlescape/rng.hpp"
#include "saddlescape/types.hpp"

namespace saddlescape {

/// Deterministic objective with declared smoothness constants.
/// Implementations must be pure and safe to share across threads.
class GradientOracle {
 public:
  virtual ~GradientOracle() = default;

  virtual int dim() const = 0;
  virtual double eval(const Vec& x) const = 0;
  virtual Vec grad(const Vec& x) const = 0;
  virtual SmoothnessSpec spec() const = 0;
};

/// Per-sample stochastic gradient g(x; theta). The sample draws theta from
/// the supplied stream, so replaying a stream copy replays theta.
class StochasticOracle {
 public:
  virtual ~StochasticOracle() = default;

  virtual int dim() const = 0;
  virtual Vec sample(const Vec& x, RngStream& rng) const = 0;
  // Exact gradient of the expected objective (tests and trace bookkeeping).
  virtual Vec mean_grad(const Vec& x) const = 0;
  // Expected objective; needed by the two-candidate exploit step.
  virtual double value(const Vec& x) const = 0;
  virtual double sigma() const = 0;
  virtual double ell_tilde() const = 0;
  virtual SmoothnessSpec spec() const = 0;

  // Mean of m samples at x, theta_j drawn from base.substream(j).
  virtual Vec minibatch_mean(const Vec& x, std::int64_t m, const RngStream& base) const;

  // (1/m) sum_j g(x0 + y; theta_j) - g(x0; theta_j), same theta_j at both points.
  virtual Vec minibatch_difference(const Vec& x0, const Vec& y, std::int64_t m,
                                   const RngStream& base) const;
};

// <grad f(x), e> for a unit e.
double grad_component(const GradientOracle& oracle, const Vec& x, const Vec& e);

}  // namespace saddlescape
