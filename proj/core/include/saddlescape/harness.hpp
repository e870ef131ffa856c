#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "saddlescape/ancgd.hpp"
#include "saddlescape/drivers.hpp"
#include "saddlescape/stochastic.hpp"
#include "saddlescape/testbed.hpp"
#include "saddlescape/trace.hpp"

namespace saddlescape {

enum class ParamMode { kPaper, kExperiment };
enum class OutputFormat { kCsv, kJson };
enum class NoiseModel { kGaussian, kFiniteSum };

std::vector<std::string> algorithm_ids();
ParamMode parse_mode(std::string_view s);
OutputFormat parse_format(std::string_view s);
ExploitRule parse_exploit_rule(std::string_view s);

struct ExperimentConfig {
  std::string landscape = "quartic";
  std::string algorithm = "nc";
  ParamMode mode = ParamMode::kExperiment;

  // Overrides; unset fields take the landscape/algorithm preset.
  std::optional<double> eta;
  std::optional<double> r;
  std::optional<double> sigma;
  std::optional<double> eps;
  std::optional<double> delta;
  std::optional<double> threshold;  // escaped := decrease > threshold
  std::optional<double> ncf_ell;
  std::optional<std::int64_t> m;
  std::optional<std::int64_t> M;
  std::optional<std::int64_t> steps;      // measurement step t
  std::optional<std::int64_t> ncf_steps;  // curvature-phase length
  std::optional<std::vector<double>> x0;
  std::optional<ExploitRule> exploit;
  NoiseModel noise = NoiseModel::kGaussian;
  bool single_sample = false;

  int dim = 10;                       // highdim only
  double eps_h = kHighdimEpsText;     // highdim only
  int trials = 300;
  std::uint64_t seed = 1;
  std::string out;                    // empty: nothing written
  OutputFormat format = OutputFormat::kCsv;
  int jobs = 1;
  bool keep_exploits = false;         // retain exploit events in the result

  void validate() const;
};

struct TrialResult {
  int trial = 0;
  std::uint64_t seed = 0;
  std::int64_t t = 0;
  double f0 = 0.0;
  double f_final = 0.0;
  double decrease = 0.0;
  bool escaped = false;
};

struct HistogramSummary {
  std::string algorithm;
  std::string landscape;
  std::string mode;
  std::vector<double> edges;
  std::vector<std::int64_t> counts;
  std::vector<double> decreases;  // per trial, trial order
  double threshold = 0.0;
  std::int64_t step = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;

  // Fraction of trials with decrease <= thr.
  double fraction_below(double thr) const;
};

struct ExperimentResult {
  HistogramSummary summary;
  std::vector<TrialResult> trials;
  std::vector<std::vector<ExploitEvent>> exploits;  // per trial, when keep_exploits
  double eps = 0.0;                                 // eps/rho used by the exploit step
  double rho = 0.0;
};

/// Everything a trial needs, resolved from a config once.
struct ResolvedExperiment {
  ExperimentConfig cfg;
  Landscape land;
  std::shared_ptr<const StochasticOracle> noisy;
  Vec x0;
  std::int64_t step = 0;
  double threshold = 0.0;
  double eps = 0.0;
  double rho = 0.0;
  std::optional<PGDNCParams> pgdnc;
  std::optional<ANCParams> anc;
  std::optional<SGDNCParams> sgdnc;
  std::optional<BaselineParams> baseline;
};

ResolvedExperiment resolve_experiment(const ExperimentConfig& cfg);

// One seeded trial on stream (cfg.seed, trial).
Trace run_trial(const ResolvedExperiment& rx, int trial);

// Runs all trials (parallel up to cfg.jobs), writes files when cfg.out is set.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string trials_csv(const std::vector<TrialResult>& trials);
std::string summary_json(const HistogramSummary& s, const std::vector<TrialResult>* trials = nullptr);

struct DimScaleRow {
  int p = 0;
  int n = 0;
  std::string algorithm;
  std::int64_t steps = 0;
  int trials = 0;
  int successes = 0;
  double success_rate = 0.0;
  double mean_decrease = 0.0;
};

// NC with 30p iterations (curvature phase 10p) against PGD with 20p^2 + 10,
// on the highdim landscape with n = 10^p. Uses cfg.trials (100 by convention),
// cfg.seed, cfg.jobs, cfg.eps_h, cfg.eta, cfg.r and cfg.out.
std::vector<DimScaleRow> run_dimension_scaling(const std::vector<int>& p_values,
                                               const ExperimentConfig& cfg);
std::string dimscale_csv(const std::vector<DimScaleRow>& rows);
std::int64_t nc_budget(int p);
std::int64_t pgd_budget(int p);

struct VerifyReport {
  std::vector<CertificationReport> landscapes;
  bool passed() const;
  std::string text() const;
};

std::vector<Landscape> default_registry();
VerifyReport run_verify(const std::vector<Landscape>& registry);

struct ParamsRequest {
  std::string algorithm = "pgd-nc";
  std::string landscape = "quartic";
  int dim = 10;
  double eps_h = kHighdimEpsText;
  double eps = 0.01;
  double delta = 0.1;
  std::optional<double> delta_f;     // default: landscape value
  std::optional<double> ell_tilde;   // default: ell
  std::optional<int> n;              // default: landscape dimension
  double c_A = 8.0;
};

// Derived parameter bundle as a JSON document.
std::string describe_params(const ParamsRequest& req);

// Writes text to path, throwing std::runtime_error when the file cannot be written.
void write_file(const std::string& path, const std::string& text);

}  // namespace saddlescape
