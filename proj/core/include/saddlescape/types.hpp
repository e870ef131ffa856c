#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace saddlescape {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Gradient-Lipschitz (ell) and Hessian-Lipschitz (rho) constants.
struct SmoothnessSpec {
  double ell = 1.0;
  double rho = 1.0;

  void validate() const;
};

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool all_finite(const Vec& v);

// Throws NumericalError naming `what` if v holds NaN or Inf.
void require_finite(const Vec& v, const char* what);

// Throws ParameterError unless |‖e‖ - 1| <= 1e-9.
void require_unit(const Vec& e, const char* what);

}  // namespace saddlescape
