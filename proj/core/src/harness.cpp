#include "saddlescape/harness.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "saddlescape/verify.hpp"

namespace saddlescape {

namespace {

using json = nlohmann::ordered_json;

constexpr double kBinWidth = 0.05;

bool is_stochastic(const std::string& alg) { return alg == "sgd-nc" || alg == "psgd"; }
bool is_accelerated(const std::string& alg) { return alg == "ancgd" || alg == "pagd"; }
bool is_baseline(const std::string& alg) { return alg == "pgd" || alg == "pagd" || alg == "psgd"; }

// Desk-scale settings per landscape and algorithm family.
struct Preset {
  double eta = 0.05;
  double r = 0.1;
  double eps = 0.01;
  double sigma = 0.01;
  double threshold_frac = 0.9;  // fraction of delta_f
  std::int64_t fast_steps = 30;  // NC-type methods
  std::int64_t slow_steps = 90;  // their baselines
  std::int64_t ncf_steps = 10;
};

Preset preset_for(const Landscape& land, const std::string& alg) {
  Preset p;
  const std::string& id = land.id;
  if (id == "cubic") {
    p.eta = 0.02;
    p.r = 0.01;
    p.eps = 0.05;
    p.threshold_frac = 0.6 / land.delta_f;
    p.slow_steps = 60;
    p.ncf_steps = 15;
  } else if (id == "triangle") {
    p.eta = 0.01;
  } else if (id == "exponential") {
    p.eta = 0.03;
    p.slow_steps = 60;
  }
  if (is_accelerated(alg)) {
    p.fast_steps = 20;
    p.ncf_steps = 13;
    if (id == "quartic") {
      p.r = 0.08;
      p.slow_steps = 40;
    } else if (id == "triangle") {
      p.slow_steps = 80;
    } else if (id == "exponential") {
      p.slow_steps = 60;
    } else {
      p.slow_steps = 40;
    }
  }
  return p;
}

void require_pos(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError(std::string(what) + " must be positive");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunControls trial_controls(std::int64_t step) {
  RunControls c;
  c.max_records = step;
  return c;
}

void apply_paper(ResolvedExperiment& rx, const Preset& pre) {
  const ExperimentConfig& cfg = rx.cfg;
  const std::string& alg = cfg.algorithm;
  const SmoothnessSpec spec = rx.land.f().spec();
  const int n = rx.land.f().dim();
  const double eps = cfg.eps.value_or(0.01);
  const double delta = cfg.delta.value_or(0.1);
  const double df = rx.land.delta_f;
  rx.eps = eps;
  rx.rho = spec.rho;
  std::int64_t phase = 0;
  if (alg == "nc" || alg == "pgd-nc") {
    PGDNCParams p = derive_pgdnc_params(spec, eps, delta, n, df);
    if (alg == "nc") p.max_nc_calls = 1;
    if (cfg.eta) p.eta = *cfg.eta;
    if (cfg.r) p.nc.r = *cfg.r;
    if (cfg.ncf_steps) p.nc.script_T = *cfg.ncf_steps;
    if (cfg.exploit) p.exploit.rule = *cfg.exploit;
    phase = p.nc.script_T;
    rx.pgdnc = p;
  } else if (alg == "ancgd") {
    const double d0 = std::min(1.0, derive_delta0(delta, df, eps, spec.rho));
    ANCParams p = derive_anc_params(spec, eps, d0, n, df);
    if (cfg.r) p.r_prime = *cfg.r;
    if (cfg.ncf_steps) p.script_T_prime = *cfg.ncf_steps;
    if (cfg.exploit) p.exploit.rule = *cfg.exploit;
    phase = p.script_T_prime;
    rx.anc = p;
  } else if (alg == "sgd-nc") {
    SGDNCParams p = derive_sgdnc_params(spec, rx.noisy->ell_tilde(), eps, delta, n, df);
    if (cfg.eta) p.eta = *cfg.eta;
    if (cfg.r) p.snc.r_s = *cfg.r;
    if (cfg.m) p.snc.m = *cfg.m;
    if (cfg.M) p.M = *cfg.M;
    if (cfg.ncf_steps) p.snc.script_T_s = *cfg.ncf_steps;
    if (cfg.exploit) p.exploit.rule = *cfg.exploit;
    p.single_sample = cfg.single_sample;
    phase = p.snc.script_T_s;
    rx.sgdnc = p;
  }
  rx.step = cfg.steps.value_or(phase + 500);
  if (rx.pgdnc) {
    rx.pgdnc->T_total = std::max(rx.pgdnc->T_total, rx.step);
    rx.pgdnc->controls = trial_controls(rx.step);
  }
  if (rx.anc) {
    rx.anc->T_total = std::max(rx.anc->T_total, rx.step);
    rx.anc->controls = trial_controls(rx.step);
  }
  if (rx.sgdnc) {
    rx.sgdnc->T_total = std::max(rx.sgdnc->T_total, rx.step);
    rx.sgdnc->controls = trial_controls(rx.step);
  }
  (void)pre;
}

void apply_experiment(ResolvedExperiment& rx, const Preset& pre) {
  const ExperimentConfig& cfg = rx.cfg;
  const std::string& alg = cfg.algorithm;
  const SmoothnessSpec spec = rx.land.f().spec();
  const double eta = cfg.eta.value_or(pre.eta);
  const double r = cfg.r.value_or(pre.r);
  const double eps = cfg.eps.value_or(pre.eps);
  const double ncf_ell = cfg.ncf_ell.value_or(rx.land.ncf_ell);
  const std::int64_t ncf_steps = cfg.ncf_steps.value_or(pre.ncf_steps);
  const double delta = cfg.delta.value_or(0.1);
  require_pos(eta, "eta");
  require_pos(r, "r");
  require_pos(eps, "eps");
  require_pos(ncf_ell, "ncf_ell");
  if (ncf_steps < 1) throw ParameterError("ncf_steps must be >= 1");
  rx.eps = eps;
  rx.rho = spec.rho;
  rx.step = cfg.steps.value_or(is_baseline(alg) ? pre.slow_steps : pre.fast_steps);
  if (rx.step < 1) throw ParameterError("steps must be >= 1");

  ExploitOptions ex;
  ex.rule = cfg.exploit.value_or(ExploitRule::kLineSearch);
  ex.ls_start = r;
  const RunControls ctl = trial_controls(rx.step);

  // Momentum constants follow the step size: theta from ell_eff = 1/(4 eta).
  const double ell_eff = 1.0 / (4.0 * eta);
  const double theta = std::pow(spec.rho * eps, 0.25) / (4.0 * std::sqrt(ell_eff));
  const double gamma = theta * theta / eta;
  const double s = gamma / (4.0 * spec.rho);

  if (alg == "nc" || alg == "pgd-nc") {
    PGDNCParams p;
    p.nc.script_T = ncf_steps;
    p.nc.r = r;
    p.nc.eps = eps;
    p.nc.delta0 = delta;
    p.nc.ell = ncf_ell;
    p.T_total = rx.step;
    p.delta = delta;
    p.delta0 = delta;
    p.delta_f = rx.land.delta_f;
    p.eps = eps;
    p.rho = spec.rho;
    p.eta = eta;
    p.max_nc_calls = alg == "nc" ? 1 : 0;
    p.cooldown = alg == "pgd-nc";
    p.exploit = ex;
    p.controls = ctl;
    rx.pgdnc = p;
  } else if (alg == "ancgd") {
    ANCParams p;
    p.eta = eta;
    p.theta = theta;
    p.gamma = gamma;
    p.s = s;
    p.script_T_prime = ncf_steps;
    p.r_prime = r;
    p.eps = eps;
    p.rho = spec.rho;
    p.delta0 = delta;
    p.T_total = rx.step;
    p.exploit = ex;
    p.controls = ctl;
    rx.anc = p;
  } else if (alg == "sgd-nc") {
    SGDNCParams p;
    p.snc.script_T_s = ncf_steps;
    p.snc.iota = 1.0;
    p.snc.r_s = r;
    p.snc.m = cfg.m.value_or(1);
    p.snc.m_exact = static_cast<double>(p.snc.m);
    p.snc.delta = delta;
    p.snc.eps = eps;
    p.snc.rho = spec.rho;
    p.snc.ell = ncf_ell;
    p.M = cfg.M.value_or(1);
    p.T_total = rx.step;
    p.delta_s = delta;
    p.delta_f = rx.land.delta_f;
    p.eps = eps;
    p.rho = spec.rho;
    p.eta = eta;
    p.single_sample = cfg.single_sample;
    p.exploit = ex;
    p.controls = ctl;
    rx.sgdnc = p;
  }
  (void)pre;
}

void apply_baseline(ResolvedExperiment& rx, const Preset& pre) {
  const ExperimentConfig& cfg = rx.cfg;
  const SmoothnessSpec spec = rx.land.f().spec();
  BaselineParams b;
  b.eta = cfg.eta.value_or(pre.eta);
  b.r = cfg.r.value_or(pre.r);
  const double eps = cfg.eps.value_or(pre.eps);
  require_pos(b.eta, "eta");
  require_pos(eps, "eps");
  rx.eps = eps;
  rx.rho = spec.rho;
  rx.step = cfg.steps.value_or(pre.slow_steps);
  if (rx.step < 1) throw ParameterError("steps must be >= 1");
  b.g_thresh = eps;
  b.t_thresh = rx.step;  // a single perturbation per trial
  b.T_total = rx.step;
  b.M = cfg.M.value_or(1);
  const double ell_eff = 1.0 / (4.0 * b.eta);
  b.theta = std::pow(spec.rho * eps, 0.25) / (4.0 * std::sqrt(ell_eff));
  b.gamma = b.theta * b.theta / b.eta;
  b.s = b.gamma / (4.0 * spec.rho);
  b.controls = trial_controls(rx.step);
  rx.baseline = b;
}

}  // namespace

std::vector<std::string> algorithm_ids() {
  return {"nc", "ancgd", "pgd-nc", "sgd-nc", "pgd", "pagd", "psgd"};
}

ParamMode parse_mode(std::string_view s) {
  if (s == "paper") return ParamMode::kPaper;
  if (s == "experiment") return ParamMode::kExperiment;
  throw ParameterError("unknown mode '" + std::string(s) + "' (expected paper or experiment)");
}

OutputFormat parse_format(std::string_view s) {
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  throw ParameterError("unknown format '" + std::string(s) + "' (expected csv or json)");
}

ExploitRule parse_exploit_rule(std::string_view s) {
  if (s == "two-candidate") return ExploitRule::kTwoCandidate;
  if (s == "gradient-sign") return ExploitRule::kGradientSign;
  if (s == "line-search") return ExploitRule::kLineSearch;
  throw ParameterError("unknown exploit rule '" + std::string(s) + "'");
}

void ExperimentConfig::validate() const {
  const auto algs = algorithm_ids();
  if (std::find(algs.begin(), algs.end(), algorithm) == algs.end()) {
    throw ParameterError("unknown algorithm '" + algorithm + "'");
  }
  const auto ids = landscape_ids();
  if (std::find(ids.begin(), ids.end(), landscape) == ids.end()) {
    throw ParameterError("unknown landscape '" + landscape + "'");
  }
  if (trials < 1) throw ParameterError("trials must be >= 1");
  if (dim < 1) throw ParameterError("dim must be >= 1");
  if (m && *m < 1) throw ParameterError("m must be >= 1");
  if (M && *M < 1) throw ParameterError("M must be >= 1");
  if (sigma && !(*sigma >= 0.0)) throw ParameterError("sigma must be non-negative");
}

double HistogramSummary::fraction_below(double thr) const {
  if (decreases.empty()) return 0.0;
  const auto k = std::count_if(decreases.begin(), decreases.end(),
                               [thr](double d) { return d <= thr; });
  return static_cast<double>(k) / static_cast<double>(decreases.size());
}

ResolvedExperiment resolve_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ResolvedExperiment rx;
  rx.cfg = cfg;
  rx.land = make_landscape(cfg.landscape, cfg.dim, cfg.eps_h);
  const int n = rx.land.f().dim();
  if (cfg.x0) {
    if (static_cast<int>(cfg.x0->size()) != n) throw ParameterError("x0 dimension mismatch");
    rx.x0 = Eigen::Map<const Vec>(cfg.x0->data(), n);
  } else {
    rx.x0 = rx.land.saddles.front().point;
  }
  const Preset pre = preset_for(rx.land, cfg.algorithm);
  if (is_stochastic(cfg.algorithm)) {
    const double sigma = cfg.sigma.value_or(pre.sigma);
    rx.noisy = cfg.noise == NoiseModel::kGaussian
                   ? with_noise(rx.land, sigma)
                   : with_finite_sum_noise(rx.land, 10, sigma, cfg.seed);
  }
  if (is_baseline(cfg.algorithm)) {
    apply_baseline(rx, pre);
  } else if (cfg.mode == ParamMode::kPaper) {
    apply_paper(rx, pre);
  } else {
    apply_experiment(rx, pre);
  }
  rx.threshold = cfg.threshold.value_or(pre.threshold_frac * rx.land.delta_f);
  return rx;
}

Trace run_trial(const ResolvedExperiment& rx, int trial) {
  RngStream rng(rx.cfg.seed, static_cast<std::uint64_t>(trial));
  const std::string& alg = rx.cfg.algorithm;
  const GradientOracle& f = rx.land.f();
  if (alg == "nc" || alg == "pgd-nc") return pgd_nc_run(f, rx.x0, *rx.pgdnc, rng);
  if (alg == "ancgd") return ancgd_run(f, rx.x0, *rx.anc, rng);
  if (alg == "sgd-nc") return sgd_nc_run(*rx.noisy, rx.x0, *rx.sgdnc, rng);
  if (alg == "pgd") return pgd_run(f, rx.x0, *rx.baseline, rng);
  if (alg == "pagd") return pagd_run(f, rx.x0, *rx.baseline, rng);
  if (alg == "psgd") return psgd_run(*rx.noisy, rx.x0, *rx.baseline, rng);
  throw ParameterError("unknown algorithm '" + alg + "'");
}

std::string trials_csv(const std::vector<TrialResult>& trials) {
  std::string out = "trial,seed,t,f0,f_final,decrease,escaped\n";
  for (const auto& t : trials) {
    out += std::to_string(t.trial) + ',' + std::to_string(t.seed) + ',' + std::to_string(t.t) +
           ',' + fmt(t.f0) + ',' + fmt(t.f_final) + ',' + fmt(t.decrease) + ',' +
           (t.escaped ? "1" : "0") + '\n';
  }
  return out;
}

std::string summary_json(const HistogramSummary& s, const std::vector<TrialResult>* trials) {
  json j;
  j["algorithm"] = s.algorithm;
  j["landscape"] = s.landscape;
  j["mode"] = s.mode;
  j["trials"] = s.trials;
  j["seed"] = s.seed;
  j["step"] = s.step;
  j["threshold"] = s.threshold;
  j["fraction_below_threshold"] = s.fraction_below(s.threshold);
  j["bin_width"] = kBinWidth;
  j["edges"] = s.edges;
  j["counts"] = s.counts;
  if (trials) {
    json arr = json::array();
    for (const auto& t : *trials) {
      arr.push_back({{"trial", t.trial}, {"seed", t.seed}, {"t", t.t}, {"f0", t.f0},
                     {"f_final", t.f_final}, {"decrease", t.decrease}, {"escaped", t.escaped}});
    }
    j["per_trial"] = std::move(arr);
  }
  return j.dump(2) + "\n";
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const ResolvedExperiment rx = resolve_experiment(cfg);
  const int n_trials = cfg.trials;
  std::vector<TrialResult> results(n_trials);
  std::vector<std::vector<ExploitEvent>> exploits(cfg.keep_exploits ? n_trials : 0);
  std::vector<std::exception_ptr> errors(n_trials);
  std::atomic<int> next{0};

  auto worker = [&] {
    for (int i = next++; i < n_trials; i = next++) {
      try {
        const Trace tr = run_trial(rx, i);
        TrialResult& r = results[i];
        r.trial = i;
        r.seed = cfg.seed;
        r.t = rx.step;
        r.f0 = tr.meta.f0;
        r.f_final = tr.f_at(rx.step);
        r.decrease = r.f0 - r.f_final;
        r.escaped = r.decrease > rx.threshold;
        if (cfg.keep_exploits) exploits[i] = tr.exploits;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  int jobs = cfg.jobs > 0 ? cfg.jobs : static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::clamp(jobs, 1, n_trials);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ExperimentResult res;
  res.trials = std::move(results);
  res.exploits = std::move(exploits);
  res.eps = rx.eps;
  res.rho = rx.rho;
  HistogramSummary& s = res.summary;
  s.algorithm = cfg.algorithm;
  s.landscape = rx.land.id;
  s.mode = cfg.mode == ParamMode::kPaper ? "paper" : "experiment";
  s.threshold = rx.threshold;
  s.step = rx.step;
  s.trials = n_trials;
  s.seed = cfg.seed;
  double dmax = 0.0;
  for (const auto& t : res.trials) {
    s.decreases.push_back(t.decrease);
    dmax = std::max(dmax, t.decrease);
  }
  const auto bins = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(dmax / kBinWidth)));
  for (std::int64_t b = 0; b <= bins; ++b) s.edges.push_back(static_cast<double>(b) * kBinWidth);
  s.counts.assign(bins, 0);
  // Negative decreases land in the first bin, the maximum in the last.
  for (double d : s.decreases) {
    auto b = static_cast<std::int64_t>(std::floor(d / kBinWidth));
    s.counts[std::clamp<std::int64_t>(b, 0, bins - 1)]++;
  }

  if (!cfg.out.empty()) {
    if (cfg.format == OutputFormat::kCsv) {
      write_file(cfg.out, trials_csv(res.trials));
      write_file(cfg.out + ".summary.json", summary_json(s));
    } else {
      write_file(cfg.out, summary_json(s, &res.trials));
    }
  }
  return res;
}

std::int64_t nc_budget(int p) { return 30LL * p; }
std::int64_t pgd_budget(int p) { return 20LL * p * p + 10; }

std::vector<DimScaleRow> run_dimension_scaling(const std::vector<int>& p_values,
                                               const ExperimentConfig& cfg) {
  if (p_values.empty()) throw ParameterError("dimension scaling needs at least one p");
  std::vector<DimScaleRow> rows;
  for (int p : p_values) {
    if (p < 1 || p > 6) throw ParameterError("p must lie in [1, 6]");
    int n = 1;
    for (int k = 0; k < p; ++k) n *= 10;
    for (const char* alg : {"nc", "pgd"}) {
      ExperimentConfig c = cfg;
      c.landscape = "highdim";
      c.algorithm = alg;
      c.mode = ParamMode::kExperiment;
      c.dim = n;
      c.out.clear();
      c.keep_exploits = false;
      const bool nc = c.algorithm == "nc";
      c.steps = nc ? nc_budget(p) : pgd_budget(p);
      if (nc) c.ncf_steps = 10LL * p;
      const ExperimentResult res = run_experiment(c);
      DimScaleRow row;
      row.p = p;
      row.n = n;
      row.algorithm = alg;
      row.steps = *c.steps;
      row.trials = c.trials;
      double sum = 0.0;
      for (const auto& t : res.trials) {
        row.successes += t.escaped ? 1 : 0;
        sum += t.decrease;
      }
      row.success_rate = static_cast<double>(row.successes) / row.trials;
      row.mean_decrease = sum / row.trials;
      rows.push_back(row);
    }
  }
  if (!cfg.out.empty()) write_file(cfg.out, dimscale_csv(rows));
  return rows;
}

std::string dimscale_csv(const std::vector<DimScaleRow>& rows) {
  std::string out = "p,n,algorithm,steps,trials,successes,success_rate,mean_decrease\n";
  for (const auto& r : rows) {
    out += std::to_string(r.p) + ',' + std::to_string(r.n) + ',' + r.algorithm + ',' +
           std::to_string(r.steps) + ',' + std::to_string(r.trials) + ',' +
           std::to_string(r.successes) + ',' + fmt(r.success_rate) + ',' + fmt(r.mean_decrease) +
           '\n';
  }
  return out;
}

bool VerifyReport::passed() const {
  return std::all_of(landscapes.begin(), landscapes.end(),
                     [](const CertificationReport& r) { return r.passed(); });
}

std::string VerifyReport::text() const {
  std::ostringstream os;
  for (const auto& rep : landscapes) {
    os << rep.id << ": " << (rep.passed() ? "PASS" : "FAIL") << '\n';
    for (std::size_t i = 0; i < rep.saddle_lambdas.size(); ++i) {
      os << "  saddle " << i << " lambda_min " << fmt(rep.saddle_lambdas[i]) << '\n';
    }
    for (const auto& c : rep.checks) {
      os << "  " << (c.passed ? "ok   " : "FAIL ") << c.name;
      if (!c.detail.empty()) os << "  " << c.detail;
      os << '\n';
    }
  }
  os << (passed() ? "all landscapes certified" : "certification failed") << '\n';
  return os.str();
}

std::vector<Landscape> default_registry() {
  return {make_quartic(),
          make_cubic_stochastic(),
          make_triangle(),
          make_exponential(),
          make_highdim(10, kHighdimEpsText),
          make_highdim(10, kHighdimEpsCaption),
          make_highdim(1000, kHighdimEpsText)};
}

VerifyReport run_verify(const std::vector<Landscape>& registry) {
  VerifyReport rep;
  for (const auto& land : registry) rep.landscapes.push_back(certify_landscape(land));
  return rep;
}

std::string describe_params(const ParamsRequest& req) {
  const Landscape land = make_landscape(req.landscape, req.dim, req.eps_h);
  const SmoothnessSpec spec = land.f().spec();
  const int n = req.n.value_or(land.f().dim());
  const double df = req.delta_f.value_or(land.delta_f);
  const double lt = req.ell_tilde.value_or(spec.ell);
  json j;
  j["algorithm"] = req.algorithm;
  j["landscape"] = land.id;
  j["ell"] = spec.ell;
  j["rho"] = spec.rho;
  j["n"] = n;
  j["eps"] = req.eps;
  j["delta"] = req.delta;
  j["delta_f"] = df;
  j["lemma_step"] = lemma_step(req.eps, spec.rho);
  j["lemma_decrease"] = lemma_decrease(req.eps, spec.rho);
  const std::string& a = req.algorithm;
  if (a == "nc" || a == "pgd-nc") {
    const PGDNCParams p = derive_pgdnc_params(spec, req.eps, req.delta, n, df);
    j["delta0"] = p.delta0;
    j["script_T"] = p.nc.script_T;
    j["r"] = p.nc.r;
    j["eta"] = p.eta;
    j["T_total"] = p.T_total;
  } else if (a == "ancgd") {
    const double d0 = std::min(1.0, derive_delta0(req.delta, df, req.eps, spec.rho));
    const ANCParams p = derive_anc_params(spec, req.eps, d0, n, df, req.c_A);
    j["delta0"] = d0;
    j["eta"] = p.eta;
    j["theta"] = p.theta;
    j["gamma"] = p.gamma;
    j["s"] = p.s;
    j["script_T_prime"] = p.script_T_prime;
    j["r_prime"] = p.r_prime;
    j["T_total"] = p.T_total;
  } else if (a == "sgd-nc") {
    const SGDNCParams p = derive_sgdnc_params(spec, lt, req.eps, req.delta, n, df);
    j["ell_tilde"] = lt;
    j["snc_delta"] = p.snc.delta;
    j["script_T_s"] = p.snc.script_T_s;
    j["iota"] = p.snc.iota;
    j["r_s"] = p.snc.r_s;
    j["m"] = p.snc.m;
    j["m_exact"] = p.snc.m_exact;
    j["fixed_point_rounds"] = p.snc.fixed_point_rounds;
    j["M"] = p.M;
    j["eta"] = p.eta;
    j["T_total"] = p.T_total;
  } else {
    throw ParameterError("no derived parameters for '" + a + "' (expected nc, pgd-nc, ancgd or sgd-nc)");
  }
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os << text;
  os.flush();
  if (!os) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace saddlescape
