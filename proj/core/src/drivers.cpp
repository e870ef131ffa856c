#include "saddlescape/drivers.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "saddlescape/ancgd.hpp"
#include "saddlescape/sampling.hpp"

namespace saddlescape {

namespace {

bool pos(double v) { return v > 0.0 && std::isfinite(v); }

class Recorder {
 public:
  Recorder(Trace& trace, const RunControls& ctl, const char* name)
      : trace_(trace), ctl_(ctl), name_(name) {}

  void push(double f, double grad_norm, Event ev, const Vec& x, bool fallback = false,
            const Vec* v = nullptr) {
    TraceRecord rec;
    rec.t = trace_.size() + 1;
    rec.f = f;
    rec.grad_norm = grad_norm;
    rec.event = ev;
    rec.fallback = fallback;
    if (ctl_.record_iterates) {
      rec.x = x;
      if (v) rec.v = *v;
    }
    trace_.records.push_back(std::move(rec));
  }

  void check(const Vec& x, double f) {
    if (!x.allFinite() || !std::isfinite(f) || x.norm() > ctl_.trust_radius) {
      throw DivergenceError(std::string(name_) + " iterate left the trust region at t=" +
                                std::to_string(trace_.size()),
                            std::move(trace_));
    }
  }

  bool budget_hit() const { return ctl_.max_records > 0 && trace_.size() >= ctl_.max_records; }

 private:
  Trace& trace_;
  const RunControls& ctl_;
  const char* name_;
};

void init_meta(Trace& trace, const char* name, const RngStream& rng, const Vec& x0, double f0) {
  trace.meta.algorithm = name;
  trace.meta.seed = rng.seed();
  trace.meta.stream_id = rng.stream_id();
  trace.meta.x0 = x0;
  trace.meta.f0 = f0;
}

bool cooled(const std::optional<std::int64_t>& last, std::int64_t t, std::int64_t wait) {
  return !last || t - *last > wait;
}

}  // namespace

void PGDNCParams::validate() const {
  nc.validate();
  if (T_total < 1) throw ParameterError("T_total must be >= 1");
  if (!pos(eps) || !pos(rho) || !pos(eta)) throw ParameterError("PGD+NC parameters must be positive");
  if (max_nc_calls < 0) throw ParameterError("max_nc_calls must be >= 0");
}

double derive_delta0(double delta, double delta_f, double eps, double rho) {
  if (!pos(delta) || !pos(delta_f) || !pos(eps) || !pos(rho)) {
    throw ParameterError("delta, delta_f, eps and rho must be positive");
  }
  return delta / (384.0 * delta_f) * std::sqrt(eps * eps * eps / rho);
}

PGDNCParams derive_pgdnc_params(const SmoothnessSpec& spec, double eps, double delta, int n,
                                double delta_f) {
  spec.validate();
  if (!(delta > 0.0 && delta <= 1.0)) throw ParameterError("delta must lie in (0, 1]");
  PGDNCParams p;
  p.delta = delta;
  p.delta_f = delta_f;
  p.delta0 = derive_delta0(delta, delta_f, eps, spec.rho);
  p.nc = derive_nc_params(spec, eps, std::min(1.0, p.delta0), n);
  const double total = std::max(8.0 * spec.ell * delta_f / (eps * eps),
                                768.0 * delta_f * std::sqrt(spec.rho / (eps * eps * eps)));
  p.T_total = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(total)));
  p.eps = eps;
  p.rho = spec.rho;
  p.eta = 1.0 / spec.ell;
  return p;
}

Trace pgd_nc_run(const GradientOracle& oracle, const Vec& x0, const PGDNCParams& params,
                 RngStream& rng) {
  params.validate();
  if (x0.size() != oracle.dim()) throw ParameterError("start point dimension mismatch");
  require_finite(x0, "start point");

  Trace trace;
  init_meta(trace, "pgd-nc", rng, x0, oracle.eval(x0));
  trace.meta.params = {{"eta", params.eta},
                       {"script_T", static_cast<double>(params.nc.script_T)},
                       {"r", params.nc.r},
                       {"ncf_ell", params.nc.ell},
                       {"eps", params.eps},
                       {"rho", params.rho},
                       {"delta0", params.delta0},
                       {"T_total", static_cast<double>(params.T_total)}};
  Recorder rec(trace, params.controls, "pgd-nc");
  const double bound = lemma_decrease(params.eps, params.rho);

  Vec x = x0;
  std::optional<std::int64_t> last_nc;
  std::int64_t nc_calls = 0;
  std::int64_t evals = 0;
  for (std::int64_t t = 0; t < params.T_total && !rec.budget_hit(); ++t) {
    Vec g = oracle.grad(x);
    ++evals;
    Event ev = Event::kGd;
    bool fallback = false;
    bool stop = false;
    const bool allowed = params.max_nc_calls == 0 || nc_calls < params.max_nc_calls;
    if (allowed && g.norm() <= params.eps &&
        (!params.cooldown || cooled(last_nc, t, params.nc.script_T))) {
      const double f_anchor = oracle.eval(x);
      const double gn = g.norm();
      NCFindOptions o;
      o.observer = [&](std::int64_t k, const Vec&) {
        if (k > 0) rec.push(f_anchor, gn, Event::kNcfStep, x);
      };
      const NCOutcome nc = nc_find(oracle, x, params.nc, rng, o);
      evals += nc.steps_used + 1;
      ++nc_calls;
      last_nc = t;

      const ExploitResult res =
          perturb_along_nc(oracle, x, nc.e_hat, params.eps, params.rho, params.exploit);
      ExploitEvent ex;
      ex.t = trace.size() + 1;
      ex.anchor = x;
      ex.e_hat = nc.e_hat;
      ex.f_before = res.f_before;
      ex.f_after = res.f_after;
      ex.moved = res.moved;
      ex.candidate = res.f_before - res.f_after < bound;
      trace.exploits.push_back(ex);
      fallback = !res.moved;
      stop = ex.candidate && params.controls.stop_on_candidate;
      ev = Event::kNcfExploit;
      if (res.moved) {
        x = res.x;
        g = oracle.grad(x);
        ++evals;
      }
    }
    const double gn = g.norm();
    x -= params.eta * g;
    const double f = oracle.eval(x);
    rec.push(f, gn, ev, x, fallback);
    trace.meta.gradient_evals = evals;
    rec.check(x, f);
    if (stop) break;
  }
  return trace;
}

void BaselineParams::validate() const {
  if (!pos(eta)) throw ParameterError("baseline step size must be positive");
  if (!(r >= 0.0) || !(g_thresh >= 0.0) || t_thresh < 0) {
    throw ParameterError("baseline perturbation settings must be non-negative");
  }
  if (T_total < 1 || M < 1) throw ParameterError("baseline counts must be >= 1");
}

Trace pgd_run(const GradientOracle& oracle, const Vec& x0, const BaselineParams& params,
              RngStream& rng) {
  params.validate();
  if (x0.size() != oracle.dim()) throw ParameterError("start point dimension mismatch");
  Trace trace;
  init_meta(trace, "pgd", rng, x0, oracle.eval(x0));
  trace.meta.params = {{"eta", params.eta}, {"r", params.r}, {"g_thresh", params.g_thresh},
                       {"t_thresh", static_cast<double>(params.t_thresh)},
                       {"T_total", static_cast<double>(params.T_total)}};
  Recorder rec(trace, params.controls, "pgd");

  Vec x = x0;
  std::optional<std::int64_t> last;
  std::int64_t evals = 0;
  for (std::int64_t t = 0; t < params.T_total && !rec.budget_hit(); ++t) {
    Vec g = oracle.grad(x);
    ++evals;
    Event ev = Event::kGd;
    if (params.r > 0.0 && g.norm() <= params.g_thresh && cooled(last, t, params.t_thresh)) {
      x = uniform_ball_sample(x, params.r, rng);
      g = oracle.grad(x);
      ++evals;
      last = t;
      ev = Event::kPerturbUniform;
    }
    const double gn = g.norm();
    x -= params.eta * g;
    const double f = oracle.eval(x);
    rec.push(f, gn, ev, x);
    trace.meta.gradient_evals = evals;
    rec.check(x, f);
  }
  return trace;
}

Trace pagd_run(const GradientOracle& oracle, const Vec& x0, const BaselineParams& params,
               RngStream& rng) {
  params.validate();
  if (!pos(params.theta) || !(params.theta < 1.0) || !pos(params.gamma) || !pos(params.s)) {
    throw ParameterError("PAGD needs theta in (0,1), gamma > 0 and s > 0");
  }
  if (x0.size() != oracle.dim()) throw ParameterError("start point dimension mismatch");
  Trace trace;
  init_meta(trace, "pagd", rng, x0, oracle.eval(x0));
  trace.meta.params = {{"eta", params.eta},     {"r", params.r},
                       {"g_thresh", params.g_thresh},
                       {"t_thresh", static_cast<double>(params.t_thresh)},
                       {"theta", params.theta}, {"gamma", params.gamma},
                       {"s", params.s},         {"T_total", static_cast<double>(params.T_total)}};
  Recorder rec(trace, params.controls, "pagd");

  const auto n = x0.size();
  Vec x = x0;
  Vec v = Vec::Zero(n);
  Vec z = x0;
  std::optional<std::int64_t> last;
  std::optional<Vec> gz_cache;
  std::int64_t evals = 0;
  for (std::int64_t t = 0; t < params.T_total && !rec.budget_hit(); ++t) {
    const Vec gx = oracle.grad(x);
    ++evals;
    Event ev = Event::kAgd;
    if (params.r > 0.0 && gx.norm() <= params.g_thresh && cooled(last, t, params.t_thresh)) {
      x = uniform_ball_sample(x, params.r, rng);
      z = x;
      v.setZero();
      gz_cache.reset();
      last = t;
      ev = Event::kPerturbUniform;
    }
    const Vec gz = gz_cache ? *gz_cache : oracle.grad(z);
    if (!gz_cache) ++evals;
    Vec x_new = z - params.eta * gz;
    Vec v_new = x_new - x;
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
    x = std::move(x_new);
    v = std::move(v_new);
    z = std::move(z_new);
    const double f = oracle.eval(x);
    rec.push(f, gx.norm(), ev, x, false, &v);
    trace.meta.gradient_evals = evals;
    rec.check(x, f);
  }
  return trace;
}

Trace psgd_run(const StochasticOracle& oracle, const Vec& x0, const BaselineParams& params,
               RngStream& rng) {
  params.validate();
  const int n = oracle.dim();
  if (x0.size() != n) throw ParameterError("start point dimension mismatch");
  Trace trace;
  init_meta(trace, "psgd", rng, x0, oracle.value(x0));
  trace.meta.params = {{"eta", params.eta}, {"r", params.r}, {"g_thresh", params.g_thresh},
                       {"t_thresh", static_cast<double>(params.t_thresh)},
                       {"M", static_cast<double>(params.M)},
                       {"T_total", static_cast<double>(params.T_total)}};
  Recorder rec(trace, params.controls, "psgd");

  Vec x = x0;
  std::optional<std::int64_t> last;
  std::int64_t samples = 0;
  for (std::int64_t t = 0; t < params.T_total && !rec.budget_hit(); ++t) {
    Vec g = oracle.minibatch_mean(x, params.M, rng.split());
    samples += params.M;
    Event ev = Event::kSgd;
    if (params.r > 0.0 && g.norm() <= params.g_thresh && cooled(last, t, params.t_thresh)) {
      x += gaussian_sample(n, params.r * params.r / n, rng);
      g = oracle.minibatch_mean(x, params.M, rng.split());
      samples += params.M;
      last = t;
      ev = Event::kPerturbUniform;
    }
    const double gn = g.norm();
    x -= params.eta * g;
    const double f = oracle.value(x);
    rec.push(f, gn, ev, x);
    trace.meta.gradient_samples = samples;
    rec.check(x, f);
  }
  return trace;
}

}  // namespace saddlescape
