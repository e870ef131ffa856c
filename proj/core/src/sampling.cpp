#include "saddlescape/sampling.hpp"

#include <cmath>

namespace saddlescape {

Vec uniform_ball_sample(const Vec& center, double radius, RngStream& rng) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ParameterError("ball radius must be positive and finite");
  }
  const auto n = center.size();
  Vec dir(n);
  double norm = 0.0;
  // A zero Gaussian vector has probability zero; redraw if it happens.
  do {
    for (Eigen::Index i = 0; i < n; ++i) dir[i] = rng.normal();
    norm = dir.norm();
  } while (norm == 0.0);
  const double rad = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
  return center + (rad / norm) * dir;
}

Vec gaussian_sample(int n, double variance_per_coord, RngStream& rng) {
  if (n < 1) throw ParameterError("dimension must be >= 1");
  if (!(variance_per_coord >= 0.0) || !std::isfinite(variance_per_coord)) {
    throw ParameterError("variance must be non-negative and finite");
  }
  Vec out(n);
  const double sd = std::sqrt(variance_per_coord);
  for (int i = 0; i < n; ++i) out[i] = sd * rng.normal();
  return out;
}

}  // namespace saddlescape
