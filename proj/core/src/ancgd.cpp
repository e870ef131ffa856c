#include "saddlescape/ancgd.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "saddlescape/sampling.hpp"

namespace saddlescape {

void ANCParams::validate() const {
  auto pos = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!pos(eta) || !pos(theta) || !pos(gamma) || !pos(s) || !pos(r_prime) || !pos(eps) ||
      !pos(rho)) {
    throw ParameterError("ANCGD parameters must be positive and finite");
  }
  if (!(theta < 1.0)) throw ParameterError("momentum parameter theta must be < 1");
  if (script_T_prime < 1 || T_total < 1) throw ParameterError("ANCGD iteration counts must be >= 1");
}

ANCParams derive_anc_params(const SmoothnessSpec& spec, double eps, double delta0, int n,
                            double delta_f_bound, double c_A) {
  spec.validate();
  if (!(eps > 0.0)) throw ParameterError("eps must be positive");
  if (!(delta0 > 0.0 && delta0 <= 1.0)) throw ParameterError("delta0 must lie in (0, 1]");
  if (n < 1) throw ParameterError("dimension must be >= 1");
  if (!(delta_f_bound > 0.0)) throw ParameterError("delta_f_bound must be positive");
  if (!(c_A > 0.0)) throw ParameterError("c_A must be positive");

  const double l = spec.ell;
  const double rho = spec.rho;
  const double q = std::pow(rho * eps, 0.25);

  ANCParams p;
  p.eta = 1.0 / (4.0 * l);
  p.theta = q / (4.0 * std::sqrt(l));
  p.gamma = p.theta * p.theta / p.eta;
  p.s = p.gamma / (4.0 * rho);
  const double tp = 32.0 * std::sqrt(l) / q * std::log((l / delta0) * std::sqrt(n / (rho * eps)));
  p.script_T_prime = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(tp)));
  p.r_prime = delta0 * eps / 32.0 * std::sqrt(std::numbers::pi / (rho * n));
  p.eps = eps;
  p.rho = rho;
  p.delta0 = delta0;

  const double t_tilde = std::sqrt(l) / q * c_A;
  const double e_cal = std::sqrt(eps * eps * eps / rho) * std::pow(c_A, -7.0);
  const double tpd = static_cast<double>(p.script_T_prime);
  const double total = std::max(4.0 * delta_f_bound * (t_tilde + tpd) / e_cal,
                                768.0 * delta_f_bound * tpd * std::sqrt(rho / (eps * eps * eps)));
  const double cap = static_cast<double>(std::numeric_limits<std::int64_t>::max() / 2);
  p.T_total = static_cast<std::int64_t>(std::min(std::ceil(total), cap));
  return p;
}

double hamiltonian(double f, const Vec& v, double eta) { return f + v.squaredNorm() / (2.0 * eta); }

std::pair<Vec, Vec> nce_step(const GradientOracle& oracle, const Vec& x, const Vec& v, double s) {
  if (!(s > 0.0)) throw ParameterError("NCE radius must be positive");
  const Vec zero = Vec::Zero(x.size());
  const double nv = v.norm();
  if (nv >= s || nv == 0.0) return {x, zero};
  const Vec xi = (s / nv) * v;
  const Vec xp = x + xi;
  const Vec xm = x - xi;
  return {oracle.eval(xp) <= oracle.eval(xm) ? xp : xm, zero};
}

namespace {

// One momentum step of the curvature window, pinned back to radius r'.
void window_step(const GradientOracle& oracle, const Vec& x_tilde, const Vec& zeta, double eta,
                 double theta, double r_prime, Vec& x, Vec& v, Vec& z) {
  const Vec x_new = z - eta * (oracle.grad(z) - zeta);
  Vec v_new = x_new - x;
  const Vec z_new = x_new + (1.0 - theta) * v_new;
  const double nz = (z_new - x_tilde).norm();
  if (!(nz > 0.0) || !std::isfinite(nz)) {
    throw NumericalError("curvature window iterate collapsed onto the anchor");
  }
  const double c = r_prime / nz;
  x = x_tilde + c * (x_new - x_tilde);
  z = x_tilde + c * (z_new - x_tilde);
  v = c * v_new;
}

}  // namespace

NCOutcome anc_find(const GradientOracle& oracle, const Vec& x_tilde, const ANCParams& params,
                   RngStream& rng, const ANCFindOptions& opts) {
  params.validate();
  if (x_tilde.size() != oracle.dim()) throw ParameterError("anchor dimension mismatch");
  const Vec zeta = oracle.grad(x_tilde);
  Vec x = uniform_ball_sample(x_tilde, params.r_prime, rng);
  Vec z = x;
  Vec v = Vec::Zero(x.size());
  for (std::int64_t k = 1; k <= params.script_T_prime; ++k) {
    window_step(oracle, x_tilde, zeta, params.eta, params.theta, params.r_prime, x, v, z);
    if (opts.observer) opts.observer(k, x, z);
  }
  const Vec d = x - x_tilde;
  const double nd = d.norm();
  if (!(nd > 0.0)) throw NumericalError("curvature window ended on the anchor");
  NCOutcome out;
  out.e_hat = d / nd;
  out.steps_used = params.script_T_prime;
  out.renormalized = true;
  return out;
}

Trace ancgd_run(const GradientOracle& oracle, const Vec& x0, const ANCParams& params,
                RngStream& rng) {
  params.validate();
  if (x0.size() != oracle.dim()) throw ParameterError("start point dimension mismatch");
  require_finite(x0, "start point");

  Trace trace;
  trace.meta.algorithm = "ancgd";
  trace.meta.seed = rng.seed();
  trace.meta.stream_id = rng.stream_id();
  trace.meta.x0 = x0;
  trace.meta.f0 = oracle.eval(x0);
  trace.meta.params = {{"eta", params.eta},
                       {"theta", params.theta},
                       {"gamma", params.gamma},
                       {"s", params.s},
                       {"script_T_prime", static_cast<double>(params.script_T_prime)},
                       {"r_prime", params.r_prime},
                       {"eps", params.eps},
                       {"rho", params.rho},
                       {"T_total", static_cast<double>(params.T_total)}};

  const auto n = x0.size();
  const std::int64_t tp_len = params.script_T_prime;
  const double bound = lemma_decrease(params.eps, params.rho);
  const RunControls& ctl = params.controls;

  AGDState st;
  st.x = x0;
  st.v = Vec::Zero(n);
  st.z = x0;
  st.x_saddle = x0;
  st.zeta = Vec::Zero(n);

  std::optional<Vec> gz_cache;
  std::int64_t evals = 0;

  for (std::int64_t t = 0; t < params.T_total; ++t) {
    st.t = t;
    const Vec gx = oracle.grad(st.x);
    ++evals;
    Event ev = Event::kAgd;
    bool fallback = false;
    bool stop = false;

    if (gx.norm() <= params.eps && (!st.t_perturb || t - *st.t_perturb > tp_len)) {
      st.x_saddle = st.x;
      st.zeta = gx;
      st.x = uniform_ball_sample(st.x_saddle, params.r_prime, rng);
      st.z = st.x;
      st.v.setZero();
      st.t_perturb = t;
      gz_cache.reset();
      ev = Event::kPerturbUniform;
    }

    if (st.t_perturb && t - *st.t_perturb == tp_len) {
      const Vec d = st.x - st.x_saddle;
      const double nd = d.norm();
      if (!(nd > 0.0)) throw NumericalError("curvature window ended on the anchor");
      ExploitEvent ex;
      ex.t = t + 1;
      ex.anchor = st.x_saddle;
      ex.e_hat = d / nd;
      const ExploitResult res =
          perturb_along_nc(oracle, st.x_saddle, ex.e_hat, params.eps, params.rho, params.exploit);
      ex.f_before = res.f_before;
      ex.f_after = res.f_after;
      ex.moved = res.moved;
      ex.candidate = res.f_before - res.f_after < bound;
      fallback = !res.moved;
      trace.exploits.push_back(ex);
      st.x = res.x;
      st.z = st.x;
      st.v.setZero();
      st.zeta.setZero();
      gz_cache.reset();
      ev = Event::kNcfExploit;
      stop = ex.candidate && ctl.stop_on_candidate;
    }

    const bool in_window = st.t_perturb && t - *st.t_perturb < tp_len;
    if (in_window) {
      window_step(oracle, st.x_saddle, st.zeta, params.eta, params.theta, params.r_prime, st.x,
                  st.v, st.z);
      ++evals;
      gz_cache.reset();
      if (ev == Event::kAgd) ev = Event::kNcfStep;
    } else {
      const Vec gz = gz_cache ? *gz_cache : oracle.grad(st.z);
      if (!gz_cache) ++evals;
      Vec x_new = st.z - params.eta * (gz - st.zeta);
      Vec v_new = x_new - st.x;
      Vec z_new = x_new + (1.0 - params.theta) * v_new;
      const Vec g_znew = oracle.grad(z_new);
      ++evals;
      const Vec diff = x_new - z_new;
      const double rhs =
          oracle.eval(z_new) + g_znew.dot(diff) - 0.5 * params.gamma * diff.squaredNorm();
      if (oracle.eval(x_new) <= rhs) {
        auto [xn, vn] = nce_step(oracle, x_new, v_new, params.s);
        x_new = std::move(xn);
        v_new = std::move(vn);
        z_new = x_new + (1.0 - params.theta) * v_new;
        gz_cache.reset();
        if (ev == Event::kAgd) ev = Event::kNce;
      } else {
        gz_cache = g_znew;
      }
      st.x = std::move(x_new);
      st.v = std::move(v_new);
      st.z = std::move(z_new);
    }

    TraceRecord rec;
    rec.t = t + 1;
    rec.f = oracle.eval(st.x);
    rec.grad_norm = gx.norm();
    rec.event = ev;
    rec.fallback = fallback;
    if (ctl.record_iterates) {
      rec.x = st.x;
      rec.v = st.v;
    }
    trace.records.push_back(std::move(rec));
    trace.meta.gradient_evals = evals;

    if (!st.x.allFinite() || !std::isfinite(trace.records.back().f) ||
        st.x.norm() > ctl.trust_radius) {
      throw DivergenceError("ancgd iterate left the trust region at t=" + std::to_string(t + 1),
                            std::move(trace));
    }
    if (stop) break;
    if (ctl.max_records > 0 && trace.size() >= ctl.max_records) break;
  }
  return trace;
}

}  // namespace saddlescape
