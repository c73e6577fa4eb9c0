// Copyright 2026 The monofun Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: run, penalty-sample, reference, analyze.
// Exit codes: 0 success, 1 usage or configuration error, 2 runtime failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "monofun/monofun.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct RunOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> budget;
  std::optional<std::size_t> parallelism;
  std::optional<std::size_t> population;
  std::optional<std::string> out;
};

struct SampleOptions {
  int n = 6;
  std::size_t samples = 200;
  std::string variant = "fit1";
  std::uint64_t seed = 1;
  std::string out;
};

struct ReferenceOptions {
  int from = 5;
  int to = 14;
  std::string out;
};

// Writes to the named file, or stdout when the name is empty.
template <class Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  fn(os);
}

int cmd_run(const RunOptions& opt) {
  std::ifstream in(opt.config_path);
  if (!in) {
    std::cerr << "error: cannot read config " << opt.config_path << '\n';
    return kExitUsage;
  }
  monofun::ExperimentConfig cfg;
  try {
    cfg = monofun::parse_experiment_config(in);
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.runs) cfg.runs = *opt.runs;
    if (opt.budget) cfg.budget = *opt.budget;
    if (opt.parallelism) cfg.parallelism = *opt.parallelism;
    if (opt.population) cfg.population = *opt.population;
    if (opt.out) cfg.out_dir = *opt.out;
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << opt.config_path << ": " << e.what() << '\n';
    return kExitUsage;
  }
  const auto summaries = monofun::run_experiment(cfg, std::cerr);
  std::cout << monofun::summary_csv_header() << '\n';
  for (const auto& s : summaries) std::cout << monofun::summary_csv_row(s) << '\n';
  return 0;
}

int cmd_penalty_sample(const SampleOptions& opt) {
  monofun::PenaltyVariant variant;
  try {
    variant = monofun::parse_variant(opt.variant);
  } catch (const monofun::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const auto stats = monofun::penalty_sample(opt.n, opt.samples, variant, opt.seed);
  with_output(opt.out, [&](std::ostream& os) { monofun::write_penalty_csv(os, stats); });
  return 0;
}

int cmd_reference(const ReferenceOptions& opt) {
  const auto rows = monofun::reference_table(opt.from, opt.to);
  with_output(opt.out, [&](std::ostream& os) { monofun::write_reference_csv(os, rows); });
  return 0;
}

int cmd_analyze(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read " << path << '\n';
    return kExitUsage;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  monofun::AnalysisReport report;
  try {
    report = monofun::analyze_text(buffer.str());
  } catch (const monofun::ParseError& e) {
    std::cerr << "error: " << path << ": " << e.what() << '\n';
    return kExitUsage;
  }
  monofun::print_analysis(std::cout, report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolution and analysis of monotone Boolean functions with high nonlinearity"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "Execute an experiment matrix");
  run->add_option("--config", run_opt.config_path, "Experiment file")->required();
  run->add_option("--seed", run_opt.seed, "Override base seed");
  run->add_option("--runs", run_opt.runs, "Override runs per cell");
  run->add_option("--budget", run_opt.budget, "Override evaluations per run");
  run->add_option("--parallelism", run_opt.parallelism, "Concurrent runs");
  run->add_option("--population", run_opt.population, "Override population size");
  run->add_option("--out", run_opt.out, "Output directory");

  SampleOptions sample_opt;
  auto* sample = app.add_subcommand("penalty-sample", "Penalty statistics of random functions by weight");
  sample->add_option("--n", sample_opt.n, "Number of variables (<= 16)")->capture_default_str();
  sample->add_option("--samples", sample_opt.samples, "Functions per weight")->capture_default_str();
  sample->add_option("--variant", sample_opt.variant, "fit1, fit2 or fit3")->capture_default_str();
  sample->add_option("--seed", sample_opt.seed, "Seed")->capture_default_str();
  sample->add_option("--out", sample_opt.out, "CSV file (default stdout)");

  ReferenceOptions ref_opt;
  auto* reference = app.add_subcommand("reference", "Reference nonlinearities and monotone bounds");
  reference->add_option("--from", ref_opt.from, "Smallest n")->capture_default_str();
  reference->add_option("--to", ref_opt.to, "Largest n")->capture_default_str();
  reference->add_option("--out", ref_opt.out, "CSV file (default stdout)");

  std::string analyze_path;
  auto* analyze = app.add_subcommand("analyze", "Report the properties of one function");
  analyze->add_option("file", analyze_path, "Truth-table file, GP expression file or run JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_opt);
    if (*sample) return cmd_penalty_sample(sample_opt);
    if (*reference) return cmd_reference(ref_opt);
    if (*analyze) return cmd_analyze(analyze_path);
  } catch (const monofun::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
