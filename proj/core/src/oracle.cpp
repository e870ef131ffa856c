#include "saddlescape/oracle.hpp"

#include <cmath>
#include <string>

namespace saddlescape {

void SmoothnessSpec::validate() const {
  if (!(ell > 0.0) || !(rho > 0.0) || !std::isfinite(ell) || !std::isfinite(rho)) {
    throw ParameterError("smoothness constants must be positive and finite (ell=" +
                         std::to_string(ell) + ", rho=" + std::to_string(rho) + ")");
  }
}

bool all_finite(const Vec& v) { return v.allFinite(); }

void require_finite(const Vec& v, const char* what) {
  if (!v.allFinite()) throw NumericalError(std::string(what) + " has non-finite components");
}

void require_unit(const Vec& e, const char* what) {
  if (std::abs(e.norm() - 1.0) > 1e-9) {
    throw ParameterError(std::string(what) + " must be a unit vector");
  }
}

Vec StochasticOracle::minibatch_mean(const Vec& x, std::int64_t m, const RngStream& base) const {
  if (m < 1) throw ParameterError("minibatch size must be >= 1");
  Vec acc = Vec::Zero(dim());
  for (std::int64_t j = 0; j < m; ++j) {
    RngStream s = base.substream(static_cast<std::uint64_t>(j));
    acc += sample(x, s);
  }
  return acc / static_cast<double>(m);
}

Vec StochasticOracle::minibatch_difference(const Vec& x0, const Vec& y, std::int64_t m,
                                           const RngStream& base) const {
  if (m < 1) throw ParameterError("minibatch size must be >= 1");
  const Vec xp = x0 + y;
  Vec acc = Vec::Zero(dim());
  for (std::int64_t j = 0; j < m; ++j) {
    RngStream s1 = base.substream(static_cast<std::uint64_t>(j));
    RngStream s0 = s1;
    acc += sample(xp, s1) - sample(x0, s0);
  }
  return acc / static_cast<double>(m);
}

double grad_component(const GradientOracle& oracle, const Vec& x, const Vec& e) {
  require_unit(e, "direction");
  return oracle.grad(x).dot(e);
}

}  // namespace saddlescape
