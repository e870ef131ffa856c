#pragma once

#include "saddlescape/rng.hpp"
#include "saddlescape/types.hpp"

namespace saddlescape {

// Uniform point in the closed ball: Gaussian direction times radius * U^(1/n).
Vec uniform_ball_sample(const Vec& center, double radius, RngStream& rng);

// i.i.d. N(0, variance_per_coord) coordinates.
Vec gaussian_sample(int n, double variance_per_coord, RngStream& rng);

}  // namespace saddlescape
