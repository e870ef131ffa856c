#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "saddlescape/oracle.hpp"
#include "saddlescape/rng.hpp"
#include "saddlescape/types.hpp"

namespace saddlescape {

/// Oracle from closed-form value and gradient callables.
class AnalyticOracle : public GradientOracle {
 public:
  using ValueFn = std::function<double(const Vec&)>;
  using GradFn = std::function<Vec(const Vec&)>;

  AnalyticOracle(int n, ValueFn f, GradFn g, SmoothnessSpec spec);

  int dim() const override { return n_; }
  double eval(const Vec& x) const override { return f_(x); }
  Vec grad(const Vec& x) const override { return g_(x); }
  SmoothnessSpec spec() const override { return spec_; }

 private:
  int n_;
  ValueFn f_;
  GradFn g_;
  SmoothnessSpec spec_;
};

struct SaddleInfo {
  Vec point;
  double lambda_min = 0.0;
  Vec eigvec;
};

struct MinimumInfo {
  Vec point;
  double f = 0.0;
};

struct Box {
  Vec lo;
  Vec hi;

  bool contains(const Vec& x) const;
  Vec sample(RngStream& rng) const;
  double max_norm() const;
};

struct Landscape {
  std::string id;
  std::shared_ptr<const GradientOracle> oracle;
  std::vector<SaddleInfo> saddles;
  std::vector<MinimumInfo> minima;
  Box box;
  std::string notes;     // where (ell, rho) come from
  double ncf_ell = 0.0;  // gradient-Lipschitz bound near the listed saddles
  double delta_f = 0.0;  // f(first saddle) minus the infimum on the box

  const GradientOracle& f() const { return *oracle; }
};

// x1^4/16 - x1^2/2 + 9/8 x2^2 on [-3,3]^2.
Landscape make_quartic();
// (x1^3 - x2^3)/2 - 3 x1 x2 + (x1^2 + x2^2)^2/2 on [-1.5,1.5]^2.
Landscape make_cubic_stochastic();
// cos(pi x1)/2 + (x2 + (cos(2 pi x1) - 1)/2)^2/2 - 1/2 on [-1.5,1.5]^2.
Landscape make_triangle();
// 1/(1 + exp(x1^2)) + (x2 - x1^2 exp(-x1^2))^2/2 - 1 on [-3,3]^2.
Landscape make_exponential();
// x^T diag(-eps_h, 1, ..., 1) x / 2 + x1^4/16 on [-3,3]^n.
Landscape make_highdim(int n, double eps_h);

inline constexpr double kHighdimEpsText = 1.0;
inline constexpr double kHighdimEpsCaption = 0.01;

// g(x; theta) = grad f(x) + theta, theta ~ N(0, sigma^2 I). ell_tilde = ell.
std::shared_ptr<const StochasticOracle> with_noise(const Landscape& land, double sigma);

// g(x; i) = grad f(x) + A_i x + b_i with sum_i A_i = 0 and sum_i b_i = 0, i uniform.
std::shared_ptr<const StochasticOracle> with_finite_sum_noise(const Landscape& land,
                                                              int components, double scale,
                                                              std::uint64_t seed);

std::vector<std::string> landscape_ids();

// "quartic", "cubic", "triangle", "exponential", "highdim" (uses dim, eps_h).
Landscape make_landscape(std::string_view id, int dim = 10, double eps_h = kHighdimEpsText);

struct CertCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CertificationReport {
  std::string id;
  std::vector<CertCheck> checks;
  std::vector<double> saddle_lambdas;  // measured, one per listed saddle

  bool passed() const;
};

// FD-gradient, Lipschitz, saddle/minimum and ell-bound certification.
CertificationReport certify_landscape(const Landscape& land, std::uint64_t seed = 20240601,
                                      int points = 100);

}  // namespace saddlescape
