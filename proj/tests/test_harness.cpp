#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "saddlescape/harness.hpp"

using namespace saddlescape;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "saddlescape_tests";
  fs::create_directories(dir);
  return dir / name;
}

int line_count(const std::string& s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

ExperimentConfig small(const std::string& alg, const std::string& fn, int trials = 24) {
  ExperimentConfig c;
  c.algorithm = alg;
  c.landscape = fn;
  c.trials = trials;
  c.seed = 42;
  return c;
}

}  // namespace

TEST(Harness, SingleTrialSummary) {
  const ExperimentResult r = run_experiment(small("nc", "quartic", 1));
  std::int64_t total = 0;
  for (auto c : r.summary.counts) total += c;
  EXPECT_EQ(total, 1);
  EXPECT_EQ(r.trials.size(), 1u);
  EXPECT_EQ(r.summary.edges.size(), r.summary.counts.size() + 1);
  EXPECT_DOUBLE_EQ(r.summary.edges.front(), 0.0);
}

TEST(Harness, CountsSumToTrialsForEveryAlgorithm) {
  for (const auto& alg : algorithm_ids()) {
    const std::string fn = (alg == "sgd-nc" || alg == "psgd") ? "cubic" : "quartic";
    const ExperimentResult r = run_experiment(small(alg, fn, 10));
    std::int64_t total = 0;
    for (auto c : r.summary.counts) total += c;
    EXPECT_EQ(total, 10) << alg;
    for (const auto& t : r.trials) {
      EXPECT_DOUBLE_EQ(t.decrease, t.f0 - t.f_final);
      EXPECT_EQ(t.escaped, t.decrease > r.summary.threshold);
    }
  }
}

TEST(Harness, FractionBelowCountsInclusive) {
  HistogramSummary s;
  s.decreases = {0.1, 0.5, 0.9, 1.0};
  EXPECT_DOUBLE_EQ(s.fraction_below(0.9), 0.75);
  EXPECT_DOUBLE_EQ(s.fraction_below(0.05), 0.0);
}

TEST(Harness, RerunsAreByteIdentical) {
  const ExperimentConfig c = small("sgd-nc", "cubic");
  const auto a = run_experiment(c);
  const auto b = run_experiment(c);
  EXPECT_EQ(trials_csv(a.trials), trials_csv(b.trials));
  EXPECT_EQ(summary_json(a.summary), summary_json(b.summary));
}

TEST(Harness, JobCountDoesNotChangeOutput) {
  for (const char* alg : {"nc", "ancgd", "psgd"}) {
    ExperimentConfig c = small(alg, std::string(alg) == "psgd" ? "cubic" : "quartic", 37);
    c.jobs = 1;
    const auto one = run_experiment(c);
    c.jobs = 4;
    const auto four = run_experiment(c);
    EXPECT_EQ(trials_csv(one.trials), trials_csv(four.trials)) << alg;
    EXPECT_EQ(summary_json(one.summary, &one.trials), summary_json(four.summary, &four.trials));
  }
}

TEST(Harness, WritesCsvAndSummary) {
  ExperimentConfig c = small("pgd", "quartic", 5);
  c.out = scratch("pgd.csv").string();
  run_experiment(c);
  const std::string csv = slurp(c.out);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "trial,seed,t,f0,f_final,decrease,escaped");
  EXPECT_EQ(line_count(csv), 6);
  const std::string js = slurp(c.out + ".summary.json");
  EXPECT_NE(js.find("\"bin_width\": 0.05"), std::string::npos);
  c.format = OutputFormat::kJson;
  c.out = scratch("pgd.json").string();
  run_experiment(c);
  EXPECT_NE(slurp(c.out).find("\"per_trial\""), std::string::npos);
}

TEST(Harness, Errors) {
  EXPECT_THROW(run_experiment(small("nope", "quartic")), ParameterError);
  EXPECT_THROW(run_experiment(small("nc", "nope")), ParameterError);
  EXPECT_THROW(run_experiment(small("nc", "quartic", 0)), ParameterError);
  ExperimentConfig c = small("nc", "quartic", 2);
  c.out = "/nonexistent-dir/x/out.csv";
  EXPECT_THROW(run_experiment(c), std::runtime_error);
  c.out.clear();
  c.x0 = std::vector<double>{1.0, 2.0, 3.0};
  EXPECT_THROW(run_experiment(c), ParameterError);
  EXPECT_THROW(parse_mode("fast"), ParameterError);
  EXPECT_THROW(parse_format("xml"), ParameterError);
  EXPECT_THROW(parse_exploit_rule("newton"), ParameterError);
}

TEST(Harness, PresetMeasurementSteps) {
  EXPECT_EQ(resolve_experiment(small("nc", "quartic")).step, 30);
  EXPECT_EQ(resolve_experiment(small("pgd", "quartic")).step, 90);
  EXPECT_EQ(resolve_experiment(small("ancgd", "quartic")).step, 20);
  EXPECT_EQ(resolve_experiment(small("pagd", "quartic")).step, 40);
  EXPECT_EQ(resolve_experiment(small("sgd-nc", "cubic")).step, 30);
  EXPECT_EQ(resolve_experiment(small("psgd", "cubic")).step, 60);
  const ResolvedExperiment cubic = resolve_experiment(small("sgd-nc", "cubic"));
  EXPECT_DOUBLE_EQ(cubic.threshold, 0.6);
  EXPECT_DOUBLE_EQ(cubic.sgdnc->eta, 0.02);
  EXPECT_DOUBLE_EQ(cubic.sgdnc->snc.r_s, 0.01);
  const ResolvedExperiment anc = resolve_experiment(small("ancgd", "quartic"));
  EXPECT_DOUBLE_EQ(anc.anc->r_prime, 0.08);
  ExperimentConfig paper = small("nc", "quartic");
  paper.mode = ParamMode::kPaper;
  const ResolvedExperiment pr = resolve_experiment(paper);
  EXPECT_EQ(pr.step, pr.pgdnc->nc.script_T + 500);
}

TEST(Harness, DimensionBudgets) {
  EXPECT_EQ(nc_budget(1), 30);
  EXPECT_EQ(pgd_budget(1), 30);
  EXPECT_EQ(nc_budget(3), 90);
  EXPECT_EQ(pgd_budget(3), 190);
  EXPECT_THROW(run_dimension_scaling({}, ExperimentConfig{}), ParameterError);
}

TEST(Harness, DimensionScalingTable) {
  ExperimentConfig c;
  c.trials = 10;
  const auto rows = run_dimension_scaling({1, 2}, c);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].algorithm, "nc");
  EXPECT_EQ(rows[0].n, 10);
  EXPECT_EQ(rows[3].steps, 90);
  const std::string csv = dimscale_csv(rows);
  EXPECT_EQ(line_count(csv), 5);
}

TEST(Harness, VerifyRegistry) {
  const VerifyReport ok = run_verify(default_registry());
  EXPECT_TRUE(ok.passed()) << ok.text();
  Landscape bad = make_quartic();
  bad.id = "corrupted";
  bad.oracle = std::make_shared<AnalyticOracle>(
      2, [](const Vec& x) { return x.squaredNorm(); }, [](const Vec& x) -> Vec { return x; },
      bad.f().spec());
  const VerifyReport rep = run_verify({make_quartic(), bad});
  EXPECT_FALSE(rep.passed());
  EXPECT_NE(rep.text().find("corrupted: FAIL"), std::string::npos);
}

TEST(Harness, DescribeParams) {
  ParamsRequest req;
  req.algorithm = "pgd-nc";
  const std::string js = describe_params(req);
  EXPECT_NE(js.find("\"script_T\": 4118"), std::string::npos);
  req.algorithm = "sgd-nc";
  req.landscape = "cubic";
  EXPECT_NE(describe_params(req).find("\"M\": 7639229"), std::string::npos);
  req.algorithm = "pgd";
  EXPECT_THROW(describe_params(req), ParameterError);
}

#ifdef SADDLESCAPE_CLI
namespace {
int cli(const std::string& args) {
  const std::string cmd = std::string(SADDLESCAPE_CLI) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}
}  // namespace

TEST(Cli, ExitCodes) {
  if (std::string(SADDLESCAPE_CLI).empty()) GTEST_SKIP() << "CLI not built";
  EXPECT_EQ(cli("params --alg ancgd"), 0);
  EXPECT_EQ(cli("--bogus"), 1);
  EXPECT_EQ(cli("run --alg nc"), 1);
  EXPECT_EQ(cli("run --alg nope --fn quartic"), 1);
  EXPECT_EQ(cli("run --alg pgd --fn quartic --trials 2 --eta 100 --x0 2.9,2.9"), 3);
  const std::string out = scratch("cli.csv").string();
  EXPECT_EQ(cli("run --alg nc --fn quartic --trials 4 --out " + out), 0);
  EXPECT_EQ(line_count(slurp(out)), 5);
}

TEST(Cli, ConfigFileAndOverride) {
  if (std::string(SADDLESCAPE_CLI).empty()) GTEST_SKIP() << "CLI not built";
  const fs::path cfg = scratch("run.cfg");
  const std::string out = scratch("cfg.csv").string();
  {
    std::ofstream os(cfg);
    os << "# flat key = value\nalg = pgd\nfn = quartic\ntrials = 5\nout = " << out << "\n";
  }
  EXPECT_EQ(cli("run --config " + cfg.string()), 0);
  EXPECT_EQ(line_count(slurp(out)), 6);
  EXPECT_EQ(cli("run --config " + cfg.string() + " --trials 3"), 0);
  EXPECT_EQ(line_count(slurp(out)), 4);
}

TEST(Cli, JobsFromEnvironmentLeavesOutputUnchanged) {
  if (std::string(SADDLESCAPE_CLI).empty()) GTEST_SKIP() << "CLI not built";
  const std::string a = scratch("env1.csv").string();
  const std::string b = scratch("env3.csv").string();
  EXPECT_EQ(cli("run --alg ancgd --fn quartic --trials 20 --out " + a), 0);
  EXPECT_EQ(cli("run --alg ancgd --fn quartic --trials 20 --jobs 3 --out " + b), 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(std::system(("SADDLESCAPE_JOBS=2 " + std::string(SADDLESCAPE_CLI) +
                         " run --alg ancgd --fn quartic --trials 20 --out " + b + " >/dev/null")
                            .c_str()),
            0);
  EXPECT_EQ(slurp(a), slurp(b));
}
#endif
