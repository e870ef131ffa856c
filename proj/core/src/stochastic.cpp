#include "saddlescape/stochastic.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "saddlescape/sampling.hpp"

namespace saddlescape {

namespace {
bool pos(double v) { return v > 0.0 && std::isfinite(v); }

std::int64_t ceil_to_count(double v, const char* what) {
  const double c = std::ceil(v);
  if (!std::isfinite(c) || c > static_cast<double>(std::numeric_limits<std::int64_t>::max() / 2)) {
    throw ParameterError(std::string(what) + " does not fit a 64-bit count");
  }
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(c));
}
}  // namespace

void SNCParams::validate() const {
  if (script_T_s < 1 || m < 1) throw ParameterError("SNC counts must be >= 1");
  if (!pos(r_s) || !pos(ell) || !pos(eps) || !pos(rho)) {
    throw ParameterError("SNC parameters must be positive and finite");
  }
}

void SGDNCParams::validate() const {
  snc.validate();
  if (M < 1 || T_total < 1) throw ParameterError("SGD+NC counts must be >= 1");
  if (!pos(eta) || !pos(eps) || !pos(rho)) {
    throw ParameterError("SGD+NC parameters must be positive and finite");
  }
}

SNCParams derive_snc_params(const SmoothnessSpec& spec, double ell_tilde, double eps,
                            double delta, int n) {
  spec.validate();
  if (!pos(ell_tilde)) throw ParameterError("ell_tilde must be positive");
  if (!pos(eps)) throw ParameterError("eps must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
  if (n < 1) throw ParameterError("dimension must be >= 1");

  const double l = spec.ell;
  const double rho = spec.rho;
  const double sre = std::sqrt(rho * eps);

  SNCParams p;
  p.script_T_s = ceil_to_count(8.0 * l / sre * std::log(l * n / (delta * sre)), "script_T_s");
  p.delta = delta;
  p.eps = eps;
  p.rho = rho;
  p.ell = l;

  const double ts = static_cast<double>(p.script_T_s);
  const double eta = 1.0 / l;
  auto radius = [&](double iota) { return delta / (480.0 * rho * n * ts) * std::sqrt(rho * eps / iota); };
  double iota = 10.0;
  bool converged = false;
  for (int round = 1; round <= 100; ++round) {
    const double rs = radius(iota);
    const double inner = std::log(std::sqrt(static_cast<double>(n)) / (eta * rs));
    const double next = 10.0 * std::log(n * ts * ts / delta * inner);
    if (!std::isfinite(next) || !(inner > 0.0)) break;
    p.fixed_point_rounds = round;
    const bool done = std::abs(next - iota) <= 1e-12 * std::max(1.0, std::abs(next));
    iota = next;
    if (done) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "iota/r_s fixed point did not converge in 100 rounds (ell=" << l << ", rho=" << rho
        << ", ell_tilde=" << ell_tilde << ", eps=" << eps << ", delta=" << delta << ", n=" << n
        << ")";
    throw ParameterError(msg.str());
  }
  p.iota = iota;
  p.r_s = radius(iota);
  p.m_exact = 160.0 * (l + ell_tilde) / (delta * sre) * std::sqrt(ts * iota);
  p.m = ceil_to_count(p.m_exact, "minibatch size m");
  return p;
}

SGDNCParams derive_sgdnc_params(const SmoothnessSpec& spec, double ell_tilde, double eps,
                                double delta_s, int n, double delta_f) {
  spec.validate();
  if (!(delta_s > 0.0 && delta_s < 1.0)) throw ParameterError("delta_s must lie in (0, 1)");
  if (!pos(delta_f)) throw ParameterError("delta_f must be positive");
  if (!pos(eps)) throw ParameterError("eps must be positive");
  const double l = spec.ell;
  const double rho = spec.rho;
  const double delta = delta_s / (2304.0 * delta_f) * std::sqrt(eps * eps * eps / rho);

  SGDNCParams p;
  p.snc = derive_snc_params(spec, ell_tilde, eps, delta, n);
  p.M = ceil_to_count(16.0 * l * delta_f / (eps * eps), "minibatch size M");
  p.T_total = ceil_to_count(std::max(8.0 * l * delta_f / (eps * eps),
                                     768.0 * delta_f * std::sqrt(rho / (eps * eps * eps))),
                            "T_total");
  p.delta_s = delta_s;
  p.delta_f = delta_f;
  p.eps = eps;
  p.rho = rho;
  p.eta = 1.0 / l;
  return p;
}

NCOutcome snc_find(const StochasticOracle& oracle, const Vec& x0, const SNCParams& params,
                   RngStream& rng, const SNCFindOptions& opts) {
  params.validate();
  const int n = oracle.dim();
  if (x0.size() != n) throw ParameterError("anchor dimension mismatch");
  const double rs = params.r_s;
  const double inv_ell = 1.0 / params.ell;

  NCOutcome out;
  out.renormalized = true;
  Vec y = Vec::Zero(n);
  // L grows geometrically along negative curvature; kept as log L so long
  // phases only drive the noise weight 1/L to zero instead of overflowing.
  double log_L = std::log(rs);
  for (std::int64_t t = 1; t <= params.script_T_s; ++t) {
    const RngStream base = rng.split();
    Vec gd = Vec::Zero(n);
    if (!y.isZero(0.0)) {
      gd = oracle.minibatch_difference(x0, y, params.m, base);
      out.gradient_samples += 2 * params.m;
    }
    const Vec xi = gaussian_sample(n, rs * rs / n, rng);
    y -= inv_ell * (gd + std::exp(-log_L) * xi);
    const double ny = y.norm();
    if (!(ny > 0.0) || !std::isfinite(ny)) throw NumericalError("stochastic curvature iterate degenerated");
    log_L += std::log(ny / rs);
    y *= rs / ny;
    if (opts.observer) opts.observer(t, y, std::exp(log_L), ny);
  }
  if (opts.ledger_out) {
    opts.ledger_out->log_L = log_L;
    opts.ledger_out->L = std::exp(log_L);
  }
  out.e_hat = y / y.norm();
  out.steps_used = params.script_T_s;
  return out;
}

NCOutcome snc_find_unnormalized(const StochasticOracle& oracle, const Vec& x0,
                                const SNCParams& params, RngStream& rng,
                                const SNCFindOptions& opts) {
  params.validate();
  const int n = oracle.dim();
  if (x0.size() != n) throw ParameterError("anchor dimension mismatch");
  const double rs = params.r_s;
  const double inv_ell = 1.0 / params.ell;

  NCOutcome out;
  out.renormalized = false;
  Vec z = Vec::Zero(n);
  for (std::int64_t t = 1; t <= params.script_T_s; ++t) {
    const RngStream base = rng.split();
    Vec gd = Vec::Zero(n);
    const double nz = z.norm();
    if (nz > 0.0) {
      gd = (nz / rs) * oracle.minibatch_difference(x0, (rs / nz) * z, params.m, base);
      out.gradient_samples += 2 * params.m;
    }
    const Vec xi = gaussian_sample(n, rs * rs / n, rng);
    z -= inv_ell * (gd + xi);
    if (!z.allFinite()) throw NumericalError("unnormalized stochastic iterate overflowed");
    if (opts.observer) opts.observer(t, z, 0.0, z.norm());
  }
  const double nz = z.norm();
  if (!(nz > 0.0)) throw NumericalError("unnormalized stochastic iterate is zero");
  out.e_hat = z / nz;
  out.steps_used = params.script_T_s;
  return out;
}

Trace sgd_nc_run(const StochasticOracle& oracle, const Vec& x0, const SGDNCParams& params,
                 RngStream& rng) {
  params.validate();
  if (x0.size() != oracle.dim()) throw ParameterError("start point dimension mismatch");
  require_finite(x0, "start point");

  Trace trace;
  trace.meta.algorithm = "sgd-nc";
  trace.meta.seed = rng.seed();
  trace.meta.stream_id = rng.stream_id();
  trace.meta.x0 = x0;
  trace.meta.f0 = oracle.value(x0);
  trace.meta.params = {{"eta", params.eta},
                       {"M", static_cast<double>(params.M)},
                       {"m", static_cast<double>(params.snc.m)},
                       {"script_T_s", static_cast<double>(params.snc.script_T_s)},
                       {"r_s", params.snc.r_s},
                       {"eps", params.eps},
                       {"rho", params.rho},
                       {"T_total", static_cast<double>(params.T_total)}};

  const RunControls& ctl = params.controls;
  const double bound = lemma_decrease(params.eps, params.rho);
  auto budget_hit = [&] { return ctl.max_records > 0 && trace.size() >= ctl.max_records; };
  auto check = [&](const Vec& x, double f) {
    if (!x.allFinite() || !std::isfinite(f) || x.norm() > ctl.trust_radius) {
      throw DivergenceError("sgd-nc iterate left the trust region at t=" +
                                std::to_string(trace.size()),
                            std::move(trace));
    }
  };

  Vec x = x0;
  std::int64_t samples = 0;
  for (std::int64_t t = 0; t < params.T_total && !budget_hit(); ++t) {
    Vec g = oracle.minibatch_mean(x, params.M, rng.split());
    samples += params.M;
    Event ev = Event::kSgd;
    bool fallback = false;
    bool stop = false;

    if (g.norm() <= 0.75 * params.eps) {
      const double f_anchor = oracle.value(x);
      const double gn = g.norm();
      SNCFindOptions o;
      o.observer = [&](std::int64_t, const Vec&, double, double) {
        TraceRecord rec;
        rec.t = trace.size() + 1;
        rec.f = f_anchor;
        rec.grad_norm = gn;
        rec.event = Event::kNcfStep;
        if (ctl.record_iterates) rec.x = x;
        trace.records.push_back(std::move(rec));
      };
      const NCOutcome nc = snc_find(oracle, x, params.snc, rng, o);
      samples += nc.gradient_samples;

      ExploitEvent ex;
      ex.anchor = x;
      ex.e_hat = nc.e_hat;
      const ExploitResult res = perturb_along_nc([&](const Vec& p) { return oracle.value(p); },
                                                 g.dot(nc.e_hat), x, nc.e_hat, params.eps,
                                                 params.rho, params.exploit);
      ex.t = trace.size() + 1;
      ex.f_before = res.f_before;
      ex.f_after = res.f_after;
      ex.moved = res.moved;
      ex.candidate = res.f_before - res.f_after < bound;
      trace.exploits.push_back(ex);
      fallback = !res.moved;
      stop = ex.candidate && ctl.stop_on_candidate;
      x = res.x;
      ev = Event::kNcfExploit;
      g = oracle.minibatch_mean(x, params.M, rng.split());
      samples += params.M;
    }

    Vec step = g;
    if (params.single_sample) {
      RngStream s = rng.split();
      step = oracle.sample(x, s);
      samples += 1;
    }
    x -= params.eta * step;

    TraceRecord rec;
    rec.t = trace.size() + 1;
    rec.f = oracle.value(x);
    rec.grad_norm = g.norm();
    rec.event = ev;
    rec.fallback = fallback;
    if (ctl.record_iterates) rec.x = x;
    const double f_now = rec.f;
    trace.records.push_back(std::move(rec));
    trace.meta.gradient_samples = samples;
    check(x, f_now);
    if (stop) break;
  }
  trace.meta.gradient_samples = samples;
  return trace;
}

}  // namespace saddlescape
