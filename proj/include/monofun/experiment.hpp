// Copyright 2026 The monofun Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "monofun/baselines.hpp"
#include "monofun/ea.hpp"
#include "monofun/encodings.hpp"
#include "monofun/fitness.hpp"
#include "monofun/format.hpp"
#include "monofun/monotonicity.hpp"
#include "monofun/run_io.hpp"
#include "monofun/walsh.hpp"

namespace monofun {

// ===========================================================================
// Experiment matrix

struct Cell {
  int n = 5;
  Encoding encoding = Encoding::TT;
  Scenario scenario = Scenario::Imbalanced;
  PenaltyVariant variant = PenaltyVariant::Fit1;

  /// Row label of the best-values table, e.g. "bal: TT" or "imb: GP, fit2".
  std::string row_label() const {
    std::string s = scenario == Scenario::Balanced ? "bal: " : "imb: ";
    s += to_string(encoding);
    if (scenario == Scenario::Imbalanced) {
      s += ", ";
      s += to_string(variant);
    }
    return s;
  }

  /// File-system friendly tag, e.g. "n05_TT_imb_fit1".
  std::string tag() const {
    std::string s = (n < 10 ? "n0" : "n") + std::to_string(n) + "_" + std::string(to_string(encoding));
    s += scenario == Scenario::Balanced ? "_bal" : "_imb_" + std::string(to_string(variant));
    return s;
  }

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct ExperimentConfig {
  std::vector<Cell> cells;
  std::size_t runs = 30;
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = 1;
  std::string out_dir = "results";
  std::size_t parallelism = 1;
  std::size_t population = 500;
  double mutation_probability = 0.5;
  int gp_max_depth = 8;

  /// EaConfig of a cell. Each cell gets its own base seed so that adding a
  /// cell to the matrix leaves the others unchanged.
  EaConfig ea_config(const Cell& cell) const {
    EaConfig c;
    c.n = cell.n;
    c.encoding = cell.encoding;
    c.scenario = cell.scenario;
    c.variant = cell.variant;
    c.population_size = population;
    c.evaluation_budget = budget;
    c.mutation_probability = mutation_probability;
    c.gp_max_depth = gp_max_depth;
    std::uint64_t cell_key = static_cast<std::uint64_t>(cell.n);
    cell_key = cell_key * 8 + static_cast<std::uint64_t>(cell.encoding);
    cell_key = cell_key * 8 + static_cast<std::uint64_t>(cell.scenario);
    cell_key = cell_key * 8 + static_cast<std::uint64_t>(cell.variant);
    c.seed = derive_seed(seed, cell_key);
    return c;
  }

  void validate() const {
    if (runs < 1) throw ParameterError("runs must be at least 1");
    for (const auto& cell : cells) ea_config(cell).validate();
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_number(const std::string& text, const std::string& key) {
  std::istringstream is(text);
  T value{};
  if (!(is >> value) || !(is >> std::ws).eof()) throw ParseError("bad value for '" + key + "': " + text);
  return value;
}

/// "5", "5-14" or "5,7,9" (lists of either form).
inline std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> out;
  for (const auto& part : split(text, ',')) {
    const auto dash = part.find('-');
    if (dash == std::string::npos) {
      out.push_back(parse_number<int>(part, "cell n"));
    } else {
      const int lo = parse_number<int>(trim(part.substr(0, dash)), "cell n");
      const int hi = parse_number<int>(trim(part.substr(dash + 1)), "cell n");
      if (lo > hi) throw ParseError("empty size range: " + part);
      for (int n = lo; n <= hi; ++n) out.push_back(n);
    }
  }
  return out;
}

}  // namespace detail

/// Parses the experiment file format:
///
///     # comment
///     runs = 30
///     budget = 1000000
///     seed = 42
///     parallelism = 4
///     population = 500
///     p_mut = 0.5
///     gp_max_depth = 8
///     out = results
///     cell = 5-14 TT,GP imbalanced fit1,fit2,fit3
///     cell = 5-14 TT,TTw,GP balanced
///
/// Each `cell` line expands to the product of its sizes, encodings and
/// variants. Balanced cells take no variant (the raw penalty is used).
inline ExperimentConfig parse_experiment_config(std::istream& is) {
  ExperimentConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = detail::trim(std::string_view(line).substr(0, eq));
    const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
    try {
      if (key == "runs") {
        cfg.runs = detail::parse_number<std::size_t>(value, key);
      } else if (key == "budget") {
        cfg.budget = detail::parse_number<std::uint64_t>(value, key);
      } else if (key == "seed") {
        cfg.seed = detail::parse_number<std::uint64_t>(value, key);
      } else if (key == "parallelism") {
        cfg.parallelism = detail::parse_number<std::size_t>(value, key);
      } else if (key == "population") {
        cfg.population = detail::parse_number<std::size_t>(value, key);
      } else if (key == "p_mut") {
        cfg.mutation_probability = detail::parse_number<double>(value, key);
      } else if (key == "gp_max_depth") {
        cfg.gp_max_depth = detail::parse_number<int>(value, key);
      } else if (key == "out") {
        cfg.out_dir = value;
      } else if (key == "cell") {
        std::istringstream fields(value);
        std::string sizes, encodings, scenario, variants;
        fields >> sizes >> encodings >> scenario >> variants;
        if (scenario.empty()) throw ParseError("cell needs: sizes encodings scenario [variants]");
        std::string extra;
        if (fields >> extra) throw ParseError("unexpected token in cell: " + extra);
        const Scenario sc = parse_scenario(scenario);
        if (variants.empty()) variants = "fit1";
        for (int n : detail::parse_sizes(sizes)) {
          for (const auto& e : detail::split(encodings, ',')) {
            for (const auto& v : detail::split(variants, ',')) {
              const PenaltyVariant pv = parse_variant(v);
              if (sc == Scenario::Balanced && pv != PenaltyVariant::Fit1) {
                throw ParseError("balanced cells use fit1 only");
              }
              cfg.cells.push_back({n, parse_encoding(e), sc, pv});
            }
          }
        }
      } else {
        throw ParseError("unknown key '" + key + "'");
      }
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

// ===========================================================================
// Summaries

struct CellSummary {
  Cell cell;
  std::size_t runs = 0;
  std::size_t feasible_runs = 0;
  std::optional<std::int64_t> best_nl;
  std::optional<double> median_nl;
  std::optional<std::int64_t> min_nl;
  double best_fitness = 0.0;

  double feasibility_rate() const { return runs == 0 ? 0.0 : static_cast<double>(feasible_runs) / static_cast<double>(runs); }
};

/// Aggregates the best nonlinearity of the feasible runs of one cell.
inline CellSummary summarize(const Cell& cell, const std::vector<RunRecord>& records) {
  CellSummary s;
  s.cell = cell;
  s.runs = records.size();
  std::vector<std::int64_t> values;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i == 0 || records[i].best.fitness > s.best_fitness) s.best_fitness = records[i].best.fitness;
    if (records[i].best.nonlinearity) values.push_back(*records[i].best.nonlinearity);
  }
  s.feasible_runs = values.size();
  if (!values.empty()) {
    std::sort(values.begin(), values.end());
    s.best_nl = values.back();
    s.min_nl = values.front();
    const std::size_t mid = values.size() / 2;
    s.median_nl = values.size() % 2 == 1 ? static_cast<double>(values[mid])
                                         : (static_cast<double>(values[mid - 1]) + static_cast<double>(values[mid])) / 2.0;
  }
  return s;
}

inline std::string summary_csv_header() {
  return "n,encoding,scenario,variant,runs,feasible_runs,feasibility_rate,best_nl,median_nl,min_nl,best_fitness";
}

inline std::string summary_csv_row(const CellSummary& s) {
  std::ostringstream os;
  os << s.cell.n << ',' << to_string(s.cell.encoding) << ',' << to_string(s.cell.scenario) << ','
     << to_string(s.cell.variant) << ',' << s.runs << ',' << s.feasible_runs << ','
     << format_double(s.feasibility_rate()) << ',' << optional_field(s.best_nl) << ','
     << (s.median_nl ? format_double(*s.median_nl) : std::string()) << ',' << optional_field(s.min_nl) << ','
     << format_double(s.best_fitness);
  return os.str();
}

/// Rows (one per scenario/encoding/variant, in first-seen order) by sizes.
/// Entries: best nonlinearity, "-" if no run of the cell found a feasible
/// function, empty if the cell was not part of the matrix.
inline std::string best_values_table(const std::vector<CellSummary>& summaries) {
  std::vector<std::string> rows;
  std::set<int> sizes;
  std::map<std::pair<std::string, int>, std::string> entries;
  for (const auto& s : summaries) {
    const std::string label = s.cell.row_label();
    if (std::find(rows.begin(), rows.end(), label) == rows.end()) rows.push_back(label);
    sizes.insert(s.cell.n);
    entries[{label, s.cell.n}] = s.best_nl ? std::to_string(*s.best_nl) : "-";
  }
  std::ostringstream os;
  os << "configuration";
  for (int n : sizes) os << ',' << n;
  os << '\n';
  for (const auto& label : rows) {
    os << '"' << label << '"';
    for (int n : sizes) {
      os << ',';
      const auto it = entries.find({label, n});
      if (it != entries.end()) os << it->second;
    }
    os << '\n';
  }
  return os.str();
}

/// Executes the matrix. Writes into cfg.out_dir:
///   runs.csv       one row per run, appended and flushed as runs finish,
///                  rewritten in (cell, run) order at the end
///   runs/<tag>_run<k>.json   detail document per run
///   summary.csv    per-cell aggregates
///   best.csv       best-values table
/// Progress lines go to `log`.
inline std::vector<CellSummary> run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
  cfg.validate();
  namespace fs = std::filesystem;
  const fs::path out(cfg.out_dir);
  fs::create_directories(out / "runs");

  const fs::path runs_csv = out / "runs.csv";
  std::ofstream runs_file(runs_csv, std::ios::trunc);
  if (!runs_file) throw std::runtime_error("cannot write " + runs_csv.string());
  runs_file << "cell," << run_csv_header() << '\n' << std::flush;

  std::vector<CellSummary> summaries;
  std::vector<std::string> ordered_rows;
  for (const auto& cell : cfg.cells) {
    const EaConfig ea = cfg.ea_config(cell);
    auto on_complete = [&](const RunRecord& r) {
      runs_file << cell.tag() << ',' << run_csv_row(r) << '\n' << std::flush;
      std::ofstream detail(out / "runs" / (cell.tag() + "_run" + std::to_string(r.run_index) + ".json"));
      detail << to_json(r).dump(2) << '\n';
      log << cell.tag() << " run " << r.run_index << ": fitness " << format_double(r.best.fitness)
          << (r.best.nonlinearity ? ", nl " + std::to_string(*r.best.nonlinearity) : ", infeasible") << '\n'
          << std::flush;
    };
    const auto records = run_batch(ea, cfg.runs, cfg.parallelism, on_complete);
    for (const auto& r : records) ordered_rows.push_back(cell.tag() + ',' + run_csv_row(r));
    summaries.push_back(summarize(cell, records));
  }

  runs_file.close();
  {
    std::ofstream rewrite(runs_csv, std::ios::trunc);
    rewrite << "cell," << run_csv_header() << '\n';
    for (const auto& row : ordered_rows) rewrite << row << '\n';
  }
  {
    std::ofstream summary(out / "summary.csv", std::ios::trunc);
    summary << summary_csv_header() << '\n';
    for (const auto& s : summaries) summary << summary_csv_row(s) << '\n';
  }
  {
    std::ofstream best(out / "best.csv", std::ios::trunc);
    best << best_values_table(summaries);
  }
  return summaries;
}

// ===========================================================================
// Penalty distribution by Hamming weight

struct PenaltyStats {
  std::size_t weight = 0;
  std::size_t samples = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  /// Population standard deviation of the sampled penalties.
  double stddev = 0.0;
};

/// For every weight w in [0, 2^n], draws `samples` functions uniformly among
/// those of weight w and summarizes the chosen penalty variant.
inline std::vector<PenaltyStats> penalty_sample(int n, std::size_t samples, PenaltyVariant variant,
                                                std::uint64_t seed) {
  if (n < 1 || n > 16) throw ParameterError("penalty sampling supports 1 <= n <= 16");
  if (samples < 1) throw ParameterError("need at least one sample per weight");
  const std::size_t size = std::size_t{1} << n;
  std::vector<PenaltyStats> out;
  out.reserve(size + 1);
  for (std::size_t w = 0; w <= size; ++w) {
    Rng rng(derive_seed(seed, w));
    PenaltyStats st;
    st.weight = w;
    st.samples = samples;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
      const TruthTable tt = bitops::random_fixed_weight(n, w, rng);
      const double p = penalty_variant(monotonicity_report(tt), variant);
      sum += p;
      sum_sq += p * p;
      if (s == 0 || p < st.min) st.min = p;
      if (s == 0 || p > st.max) st.max = p;
    }
    st.mean = sum / static_cast<double>(samples);
    st.stddev = std::sqrt(std::max(0.0, sum_sq / static_cast<double>(samples) - st.mean * st.mean));
    out.push_back(st);
  }
  return out;
}

inline void write_penalty_csv(std::ostream& os, const std::vector<PenaltyStats>& stats) {
  os << "weight,samples,mean,min,max,stddev\n";
  for (const auto& s : stats) {
    os << s.weight << ',' << s.samples << ',' << format_double(s.mean) << ',' << format_double(s.min) << ','
       << format_double(s.max) << ',' << format_double(s.stddev) << '\n';
  }
}

// ===========================================================================
// Reference table

struct ReferenceRow {
  int n = 0;
  std::int64_t majority_nl = 0;
  double covering_radius_bound = 0.0;
  std::optional<std::int64_t> simple_monotone_bound;
  MonotoneBound monotone;
  std::optional<std::int64_t> literature_balanced;
  std::optional<std::int64_t> literature_imbalanced;
  std::optional<std::int64_t> literature_general_bound;
};

inline std::vector<ReferenceRow> reference_table(int n_from, int n_to) {
  if (n_from < 2 || n_to > kMaxBoundVariables || n_from > n_to) {
    throw ParameterError("reference range must satisfy 2 <= from <= to <= " + std::to_string(kMaxBoundVariables));
  }
  std::vector<ReferenceRow> rows;
  for (int n = n_from; n <= n_to; ++n) {
    ReferenceRow r;
    r.n = n;
    r.majority_nl = threshold_nonlinearity_exact(majority_spec(n));
    r.covering_radius_bound = covering_radius_bound(n);
    if (has_simple_monotone_bound(n)) r.simple_monotone_bound = simple_monotone_bound(n);
    r.monotone = monotone_upper_bound(n);
    r.literature_balanced = literature_value(literature::kBalanced, n);
    r.literature_imbalanced = literature_value(literature::kImbalanced, n);
    r.literature_general_bound = literature_value(literature::kGeneralBound, n);
    rows.push_back(r);
  }
  return rows;
}

inline std::string to_decimal(BigInt v) {
  if (v == 0) return "0";
  const bool negative = v < 0;
  std::string s;
  while (v != 0) {
    const int digit = static_cast<int>(v % 10);
    s += static_cast<char>('0' + (negative ? -digit : digit));
    v /= 10;
  }
  if (negative) s += '-';
  return {s.rbegin(), s.rend()};
}

inline void write_reference_csv(std::ostream& os, const std::vector<ReferenceRow>& rows) {
  os << "n,majority_nl,covering_radius_bound,simple_monotone_bound,monotone_A,monotone_B,monotone_C,monotone_M,"
        "monotone_bound,monotone_bound_floor,literature_balanced,literature_imbalanced,literature_general_bound\n";
  auto opt_big = [](const std::optional<BigInt>& v) { return v ? to_decimal(*v) : std::string(); };
  for (const auto& r : rows) {
    os << r.n << ',' << r.majority_nl << ',' << format_double(r.covering_radius_bound) << ','
       << optional_field(r.simple_monotone_bound) << ',' << opt_big(r.monotone.a) << ',' << opt_big(r.monotone.b)
       << ',' << to_decimal(r.monotone.c) << ',' << to_decimal(r.monotone.m) << ','
       << format_double(r.monotone.bound) << ',' << r.monotone.bound_floor << ','
       << optional_field(r.literature_balanced) << ',' << optional_field(r.literature_imbalanced) << ','
       << optional_field(r.literature_general_bound) << '\n';
  }
}

// ===========================================================================
// Analysis of a single function

struct AnalysisReport {
  std::string source;  // "truth-table", "gp" or "run-json"
  std::string genome;  // GP expression when the input was a tree
  TruthTable table;
  std::size_t weight = 0;
  bool balanced = false;
  MonotonicityReport monotonicity;
  std::int64_t nonlinearity = 0;
  std::uint64_t max_vals = 0;
  FitnessReport fitness_balanced;
  FitnessReport fitness_fit1;
  FitnessReport fitness_fit2;
  FitnessReport fitness_fit3;
  /// Run JSON input only: the report recomputed under the run's scenario
  /// and variant, and the values logged by the run.
  std::optional<FitnessReport> recomputed;
  std::optional<double> logged_fitness;
  std::optional<std::int64_t> logged_nl;

  bool consistent_with_log() const {
    return recomputed && logged_fitness && recomputed->fitness == *logged_fitness &&
           recomputed->nonlinearity == logged_nl;
  }
};

inline AnalysisReport analyze_table(TruthTable tt) {
  AnalysisReport r;
  const WalshSpectrum spec = walsh_transform(tt);
  r.weight = tt.weight();
  r.balanced = is_balanced(spec);
  r.monotonicity = monotonicity_report(tt);
  r.nonlinearity = nonlinearity(spec);
  r.max_vals = max_abs_count(spec);
  r.fitness_balanced = fitness_balanced(tt);
  r.fitness_fit1 = fitness_imbalanced(tt, PenaltyVariant::Fit1);
  r.fitness_fit2 = fitness_imbalanced(tt, PenaltyVariant::Fit2);
  r.fitness_fit3 = fitness_imbalanced(tt, PenaltyVariant::Fit3);
  r.table = std::move(tt);
  return r;
}

namespace detail {

inline bool all_binary_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

inline TruthTable genome_to_table(Encoding enc, int n, const std::string& genome) {
  if (enc == Encoding::GP) return decode(parse_prefix(genome), n);
  return TruthTable::from_string(n, genome);
}

}  // namespace detail

/// Accepts the truth-table text format ("n" then the output vector), a GP
/// expression optionally preceded by a line holding n, or a run detail JSON
/// document written by run_experiment.
inline AnalysisReport analyze_text(std::string_view text) {
  const std::string body = detail::trim(text);
  if (body.empty()) throw ParseError("empty input");

  if (body.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
      const auto& cfg = j.at("config");
      const int n = cfg.at("n").get<int>();
      const Encoding enc = parse_encoding(cfg.at("encoding").get<std::string>());
      const std::string genome = j.at("best_genome").get<std::string>();
      AnalysisReport r = analyze_table(detail::genome_to_table(enc, n, genome));
      r.source = "run-json";
      if (enc == Encoding::GP) r.genome = genome;
      const Scenario sc = parse_scenario(cfg.at("scenario").get<std::string>());
      const PenaltyVariant v = parse_variant(cfg.at("variant").get<std::string>());
      r.recomputed = evaluate(r.table, sc, v);
      const auto& best = j.at("best");
      r.logged_fitness = best.at("fitness").get<double>();
      if (!best.at("nl").is_null()) r.logged_nl = best.at("nl").get<std::int64_t>();
      return r;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("run JSON: ") + e.what());
    }
  }

  std::istringstream is(body);
  std::string first;
  std::getline(is, first);
  first = detail::trim(first);
  std::string rest((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  rest = detail::trim(rest);

  const bool first_is_number =
      !first.empty() && std::all_of(first.begin(), first.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  if (first_is_number) {
    const int n = detail::parse_number<int>(first, "n");
    if (n < 1 || n > kMaxVariables) throw ParseError("variable count out of range");
    if (detail::all_binary_digits(rest)) {
      AnalysisReport r = analyze_table(TruthTable::from_string(n, rest));
      r.source = "truth-table";
      return r;
    }
    GpGenome g = parse_prefix(rest);
    if (min_num_vars(g) > n) throw ParseError("expression uses variables beyond n");
    AnalysisReport r = analyze_table(decode(g, n));
    r.source = "gp";
    r.genome = to_prefix_string(g);
    return r;
  }
  GpGenome g = parse_prefix(body);
  AnalysisReport r = analyze_table(decode(g, min_num_vars(g)));
  r.source = "gp";
  r.genome = to_prefix_string(g);
  return r;
}

inline void print_analysis(std::ostream& os, const AnalysisReport& r) {
  os << "source: " << r.source << '\n';
  if (!r.genome.empty()) os << "expression: " << r.genome << '\n';
  os << "n: " << r.table.num_vars() << '\n'
     << "weight: " << r.weight << '\n'
     << "balanced: " << (r.balanced ? "true" : "false") << '\n'
     << "bal_deficit: " << balancedness_deficit(r.table) << '\n'
     << "monotone: " << (r.monotonicity.monotone() ? "true" : "false") << '\n'
     << "violations: " << r.monotonicity.violations << '\n'
     << "max_possible_violations: " << r.monotonicity.max_possible << '\n'
     << "nonlinearity: " << r.nonlinearity << '\n'
     << "max_vals: " << r.max_vals << '\n'
     << "fitness_balanced: " << format_double(r.fitness_balanced.fitness) << '\n'
     << "fitness_fit1: " << format_double(r.fitness_fit1.fitness) << '\n'
     << "fitness_fit2: " << format_double(r.fitness_fit2.fitness) << '\n'
     << "fitness_fit3: " << format_double(r.fitness_fit3.fitness) << '\n';
  if (r.recomputed) {
    os << "run_fitness: " << format_double(r.recomputed->fitness) << '\n'
       << "logged_fitness: " << (r.logged_fitness ? format_double(*r.logged_fitness) : std::string()) << '\n'
       << "logged_nl: " << optional_field(r.logged_nl) << '\n'
       << "consistent_with_log: " << (r.consistent_with_log() ? "true" : "false") << '\n';
  }
}

}  // namespace monofun
