// saddlescape: experiment runner, dimension scaling, landscape certification
// and derived-parameter printer.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "saddlescape/harness.hpp"

namespace ss = saddlescape;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;
constexpr int kExitDivergence = 3;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Flat "key = value" lines become "--key value" arguments. Booleans map to
// the bare flag. Placed before the command-line flags so those win.
std::vector<std::string> config_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::FileError::Missing(path);
  std::vector<std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw CLI::ConversionError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (val == "true") {
      out.push_back("--" + key);
    } else if (val != "false") {
      out.push_back("--" + key);
      out.push_back(val);
    }
  }
  return out;
}

// argv with any "--config PATH" expanded in place of the subcommand's first slot.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> cfg;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      cfg = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      cfg = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!cfg || rest.empty()) return rest;
  std::vector<std::string> out{rest.front()};
  for (auto& a : config_args(*cfg)) out.push_back(a);
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

int default_jobs() {
  if (const char* env = std::getenv("SADDLESCAPE_JOBS")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed SADDLESCAPE_JOBS='" << env << "'\n";
    }
  }
  return 1;
}

template <class T>
void set_if(std::optional<T>& dst, CLI::Option* opt, const T& v) {
  if (opt->count() > 0) dst = v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Negative-curvature saddle escape experiments"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_help_all_flag("--help-all", "Expand all help");
  app.add_option("--config", "Flat key = value file mirroring the flags (flags override it)");

  // run
  ss::ExperimentConfig cfg;
  cfg.jobs = default_jobs();
  std::string mode = "experiment", format = "csv", exploit, noise = "gaussian";
  double eta = 0, r = 0, sigma = 0, eps = 0, delta = 0, threshold = 0, ncf_ell = 0;
  std::int64_t m = 0, M = 0, steps = 0, ncf_steps = 0;
  std::vector<double> x0;

  auto* run = app.add_subcommand("run", "Run seeded trials and write per-trial CSV plus summary");
  run->add_option("--alg", cfg.algorithm, "nc | ancgd | pgd-nc | sgd-nc | pgd | pagd | psgd")
      ->required();
  run->add_option("--fn", cfg.landscape, "quartic | cubic | triangle | exponential | highdim")
      ->required();
  run->add_option("--mode", mode, "paper | experiment")->capture_default_str();
  run->add_option("--trials", cfg.trials)->capture_default_str();
  run->add_option("--seed", cfg.seed)->capture_default_str();
  auto* o_steps = run->add_option("--steps", steps, "Measurement step");
  run->add_option("--out", cfg.out, "Output path");
  run->add_option("--format", format, "csv | json")->capture_default_str();
  run->add_option("--jobs", cfg.jobs, "Parallel trials (env SADDLESCAPE_JOBS)")->capture_default_str();
  auto* o_eta = run->add_option("--eta", eta);
  auto* o_r = run->add_option("--r", r, "Perturbation / sampling radius");
  auto* o_sigma = run->add_option("--sigma", sigma, "Gradient noise scale");
  auto* o_eps = run->add_option("--eps", eps);
  auto* o_delta = run->add_option("--delta", delta);
  auto* o_thr = run->add_option("--threshold", threshold, "Escape threshold on the decrease");
  auto* o_ncf_ell = run->add_option("--ncf-ell", ncf_ell);
  auto* o_m = run->add_option("--m", m, "Minibatch size inside the curvature phase");
  auto* o_M = run->add_option("--M", M, "Minibatch size for gradient steps");
  auto* o_ncf = run->add_option("--ncf-steps", ncf_steps, "Curvature-phase length");
  auto* o_x0 = run->add_option("--x0", x0, "Start point (default: first saddle)")->delimiter(',');
  auto* o_exploit = run->add_option("--exploit", exploit, "two-candidate | gradient-sign | line-search");
  run->add_option("--noise", noise, "gaussian | finite-sum")->capture_default_str();
  run->add_flag("--single-sample", cfg.single_sample, "Step with one fresh stochastic gradient");
  run->add_option("--dim", cfg.dim, "highdim dimension")->capture_default_str();
  run->add_option("--eps-h", cfg.eps_h, "highdim negative eigenvalue magnitude")->capture_default_str();

  // dimscale
  ss::ExperimentConfig dcfg;
  dcfg.trials = 100;
  dcfg.jobs = default_jobs();
  std::vector<int> p_values{1, 2, 3};
  double d_eta = 0, d_r = 0;
  auto* dim = app.add_subcommand("dimscale", "NC (30p steps) against PGD (20p^2+10) for n = 10^p");
  dim->add_option("--p", p_values)->delimiter(',')->capture_default_str();
  dim->add_option("--trials", dcfg.trials)->capture_default_str();
  dim->add_option("--seed", dcfg.seed)->capture_default_str();
  dim->add_option("--jobs", dcfg.jobs)->capture_default_str();
  dim->add_option("--eps-h", dcfg.eps_h)->capture_default_str();
  auto* o_deta = dim->add_option("--eta", d_eta);
  auto* o_dr = dim->add_option("--r", d_r);
  dim->add_option("--out", dcfg.out, "CSV output path");

  // verify
  auto* ver = app.add_subcommand("verify", "Certify every registered landscape");

  // params
  ss::ParamsRequest preq;
  double p_df = 0, p_lt = 0;
  int p_n = 0;
  auto* par = app.add_subcommand("params", "Print derived parameter bundles as JSON");
  par->add_option("--alg", preq.algorithm, "nc | pgd-nc | ancgd | sgd-nc")->capture_default_str();
  par->add_option("--fn", preq.landscape)->capture_default_str();
  par->add_option("--eps", preq.eps)->capture_default_str();
  par->add_option("--delta", preq.delta)->capture_default_str();
  auto* o_df = par->add_option("--delta-f", p_df);
  auto* o_lt = par->add_option("--ell-tilde", p_lt);
  auto* o_n = par->add_option("--n", p_n, "Dimension used in the formulas");
  par->add_option("--dim", preq.dim)->capture_default_str();
  par->add_option("--eps-h", preq.eps_h)->capture_default_str();
  par->add_option("--c-a", preq.c_A)->capture_default_str();

  try {
    std::vector<std::string> args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) {
      cfg.mode = ss::parse_mode(mode);
      cfg.format = ss::parse_format(format);
      if (noise == "gaussian") {
        cfg.noise = ss::NoiseModel::kGaussian;
      } else if (noise == "finite-sum") {
        cfg.noise = ss::NoiseModel::kFiniteSum;
      } else {
        throw ss::ParameterError("unknown noise model '" + noise + "'");
      }
      set_if(cfg.eta, o_eta, eta);
      set_if(cfg.r, o_r, r);
      set_if(cfg.sigma, o_sigma, sigma);
      set_if(cfg.eps, o_eps, eps);
      set_if(cfg.delta, o_delta, delta);
      set_if(cfg.threshold, o_thr, threshold);
      set_if(cfg.ncf_ell, o_ncf_ell, ncf_ell);
      set_if(cfg.m, o_m, m);
      set_if(cfg.M, o_M, M);
      set_if(cfg.steps, o_steps, steps);
      set_if(cfg.ncf_steps, o_ncf, ncf_steps);
      set_if(cfg.x0, o_x0, x0);
      if (o_exploit->count() > 0) cfg.exploit = ss::parse_exploit_rule(exploit);
      const ss::ExperimentResult res = ss::run_experiment(cfg);
      const auto& s = res.summary;
      std::cout << s.algorithm << " on " << s.landscape << " (" << s.mode << "): " << s.trials
                << " trials, t=" << s.step << ", fraction with decrease <= " << s.threshold
                << ": " << s.fraction_below(s.threshold) << '\n';
    } else if (*dim) {
      set_if(dcfg.eta, o_deta, d_eta);
      set_if(dcfg.r, o_dr, d_r);
      const auto rows = ss::run_dimension_scaling(p_values, dcfg);
      std::cout << ss::dimscale_csv(rows);
    } else if (*ver) {
      const ss::VerifyReport rep = ss::run_verify(ss::default_registry());
      std::cout << rep.text();
      return rep.passed() ? kExitOk : kExitVerify;
    } else if (*par) {
      set_if(preq.delta_f, o_df, p_df);
      set_if(preq.ell_tilde, o_lt, p_lt);
      set_if(preq.n, o_n, p_n);
      std::cout << ss::describe_params(preq);
    }
  } catch (const ss::DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const ss::VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kExitVerify;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
