#include "saddlescape/ncfind.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "saddlescape/sampling.hpp"

namespace saddlescape {

void NCParams::validate() const {
  if (script_T < 1) throw ParameterError("NC iteration count must be >= 1");
  if (!(r > 0.0) || !std::isfinite(r)) throw ParameterError("NC radius must be positive");
  if (!(ell > 0.0) || !std::isfinite(ell)) throw ParameterError("NC step constant must be positive");
}

NCParams derive_nc_params(const SmoothnessSpec& spec, double eps, double delta0, int n) {
  spec.validate();
  if (!(eps > 0.0)) throw ParameterError("eps must be positive");
  if (!(delta0 > 0.0 && delta0 <= 1.0)) throw ParameterError("delta0 must lie in (0, 1]");
  if (n < 1) throw ParameterError("dimension must be >= 1");
  const double l = spec.ell;
  const double rho_eps = spec.rho * eps;
  const double arg = (l / delta0) * std::sqrt(n / (std::numbers::pi * rho_eps));
  const double raw = 8.0 * l / std::sqrt(rho_eps) * std::log(arg);
  NCParams p;
  p.script_T = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(raw)));
  p.r = eps / (8.0 * l) * std::sqrt(std::numbers::pi / n) * delta0;
  p.eps = eps;
  p.delta0 = delta0;
  p.ell = l;
  return p;
}

NCOutcome nc_find(const GradientOracle& oracle, const Vec& x_tilde, const NCParams& params,
                  RngStream& rng, const NCFindOptions& opts) {
  params.validate();
  if (x_tilde.size() != oracle.dim()) throw ParameterError("anchor dimension mismatch");
  const double r = params.r;
  const Vec g0 = oracle.grad(x_tilde);
  const Vec origin = Vec::Zero(x_tilde.size());

  NCOutcome out;
  out.renormalized = opts.renormalize;
  for (int attempt = 0; attempt <= 3; ++attempt) {
    Vec y = uniform_ball_sample(origin, r, rng);
    if (opts.observer) opts.observer(0, y);
    bool underflow = false;
    for (std::int64_t t = 1; t <= params.script_T; ++t) {
      const double ny = y.norm();
      if (ny == 0.0) {
        underflow = true;
        break;
      }
      const Vec probe = x_tilde + (r / ny) * y;
      y -= (ny / (params.ell * r)) * (oracle.grad(probe) - g0);
      if (!y.allFinite()) throw NumericalError("negative curvature iterate overflowed");
      if (opts.renormalize) {
        const double nn = y.norm();
        if (nn == 0.0) {
          underflow = true;
          break;
        }
        y *= r / nn;
      }
      if (opts.observer) opts.observer(t, y);
    }
    out.steps_used += params.script_T;
    const double ny = y.norm();
    if (!underflow && ny > 0.0) {
      out.e_hat = y / ny;
      return out;
    }
    ++out.restarts;
  }
  throw NumericalError("negative curvature iterate collapsed to zero after 3 restarts");
}

double lemma_step(double eps, double rho) { return 0.25 * std::sqrt(eps / rho); }

double lemma_decrease(double eps, double rho) { return std::sqrt(eps * eps * eps / rho) / 384.0; }

ExploitResult perturb_along_nc(const std::function<double(const Vec&)>& f, double slope,
                               const Vec& x0, const Vec& e_hat, double eps, double rho,
                               const ExploitOptions& opts) {
  require_unit(e_hat, "exploit direction");
  if (!(eps > 0.0) || !(rho > 0.0)) throw ParameterError("eps and rho must be positive");
  const double step = lemma_step(eps, rho);

  ExploitResult res;
  res.f_before = f(x0);
  Vec best = x0;
  double best_f = res.f_before;
  auto consider = [&](const Vec& y, double fy) {
    if (std::isfinite(fy) && fy < best_f) {
      best = y;
      best_f = fy;
    }
  };

  switch (opts.rule) {
    case ExploitRule::kGradientSign: {
      const double sign = slope > 0.0 ? -1.0 : 1.0;
      const Vec y = x0 + sign * step * e_hat;
      consider(y, f(y));
      break;
    }
    case ExploitRule::kTwoCandidate:
    case ExploitRule::kLineSearch: {
      const Vec yp = x0 + step * e_hat;
      const Vec ym = x0 - step * e_hat;
      const double fp = f(yp);
      const double fm = f(ym);
      if (fm < fp) {
        consider(ym, fm);
      } else {
        consider(yp, fp);
      }
      if (opts.rule == ExploitRule::kTwoCandidate) break;
      const double start = opts.ls_start > 0.0 ? opts.ls_start : step;
      for (double sign : {1.0, -1.0}) {
        double s = start;
        Vec y = x0 + sign * s * e_hat;
        double fprev = f(y);
        consider(y, fprev);
        for (int k = 0; k < opts.ls_max_doublings; ++k) {
          s *= 2.0;
          y = x0 + sign * s * e_hat;
          const double fy = f(y);
          if (!(fy < fprev)) break;
          consider(y, fy);
          fprev = fy;
        }
      }
      break;
    }
  }
  res.moved = best_f < res.f_before;
  res.x = best;
  res.f_after = best_f;
  return res;
}

ExploitResult perturb_along_nc(const GradientOracle& oracle, const Vec& x0, const Vec& e_hat,
                               double eps, double rho, const ExploitOptions& opts) {
  const double slope =
      opts.rule == ExploitRule::kGradientSign ? grad_component(oracle, x0, e_hat) : 0.0;
  return perturb_along_nc([&](const Vec& y) { return oracle.eval(y); }, slope, x0, e_hat, eps,
                          rho, opts);
}

}  // namespace saddlescape
