// Copyright 2026 The monofun Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. All tolerances and sample sizes are fixed
// below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "monofun/monofun.hpp"
#include "oracles.hpp"

using namespace monofun;

namespace {

// Budget and run count of the evolution criteria.
constexpr std::uint64_t kBudget = 1'000'000;
constexpr std::size_t kRuns = 30;
constexpr std::uint64_t kSeed = 20260101;
// Runs per (n, encoding) for the large-size feasibility check.
constexpr std::size_t kFeasibilityRuns = 3;
// Functions per weight for the penalty-bias criterion.
constexpr std::size_t kPenaltySamplesFit1 = 500'000;
constexpr std::size_t kPenaltySamplesFit2 = 20'000;
constexpr double kBoundTolerance = 0.05;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const std::string& id, const std::string& title, const std::function<Outcome()>& body,
            std::optional<double> limit_seconds = std::nullopt) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o = body();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds && secs >= *limit_seconds) {
    o.pass = false;
    o.detail += "; exceeded " + format_double(*limit_seconds) + " s";
  }
  if (!o.pass) ++failures;
  std::ostringstream time;
  time.precision(2);
  time << std::fixed << secs;
  std::cout << (o.pass ? "PASS " : "FAIL ") << id << ' ' << title << " | " << o.detail << " | " << time.str()
            << " s" << std::endl;
}

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

EaConfig evolution_config(int n, Encoding enc, Scenario sc) {
  EaConfig c;
  c.n = n;
  c.encoding = enc;
  c.scenario = sc;
  c.variant = PenaltyVariant::Fit1;
  c.evaluation_budget = kBudget;
  c.seed = derive_seed(kSeed, static_cast<std::uint64_t>(n) * 16 + static_cast<std::uint64_t>(enc) * 4 +
                                  static_cast<std::uint64_t>(sc));
  return c;
}

std::size_t count_at_least(const std::vector<RunRecord>& runs, std::int64_t target) {
  return static_cast<std::size_t>(std::count_if(runs.begin(), runs.end(), [&](const RunRecord& r) {
    return r.best.nonlinearity && *r.best.nonlinearity >= target;
  }));
}

std::optional<std::int64_t> best_nl(const std::vector<RunRecord>& runs) {
  std::optional<std::int64_t> best;
  for (const auto& r : runs) {
    if (r.best.nonlinearity && (!best || *r.best.nonlinearity > *best)) best = r.best.nonlinearity;
  }
  return best;
}

std::string histogram(const std::vector<RunRecord>& runs) {
  std::map<std::int64_t, int> h;
  int infeasible = 0;
  for (const auto& r : runs) {
    if (r.best.nonlinearity) {
      ++h[*r.best.nonlinearity];
    } else {
      ++infeasible;
    }
  }
  std::string s = "nl histogram {";
  bool first = true;
  for (auto it = h.rbegin(); it != h.rend(); ++it) {
    s += (first ? "" : ", ") + std::to_string(it->first) + ":" + std::to_string(it->second);
    first = false;
  }
  s += "}";
  if (infeasible > 0) s += " infeasible " + std::to_string(infeasible);
  return s;
}

// Random monotone function: an OR of random monomials.
TruthTable random_monotone(int n, Rng& rng) {
  const std::size_t terms = 1 + rng.below(6);
  std::vector<std::size_t> masks(terms);
  for (auto& m : masks) {
    m = 0;
    for (int j = 0; j < n; ++j) {
      if (rng.bernoulli(0.45)) m |= std::size_t{1} << j;
    }
  }
  TruthTable tt(n);
  for (std::size_t x = 0; x < tt.size(); ++x) {
    for (auto m : masks) {
      if ((x & m) == m) {
        tt.set(x, true);
        break;
      }
    }
  }
  return tt;
}

// Best feasible nonlinearity among `budget` uniform random functions.
struct RandomSearch {
  std::optional<std::int64_t> imbalanced;
  std::optional<std::int64_t> balanced;
  std::uint64_t monotone_hits = 0;
};

RandomSearch random_search(int n, std::uint64_t budget, std::uint64_t seed) {
  Rng rng(seed);
  RandomSearch out;
  for (std::uint64_t i = 0; i < budget; ++i) {
    const TruthTable tt = bitops::random_table(n, rng);
    if (!monotonicity_report(tt).monotone()) continue;
    ++out.monotone_hits;
    const auto spec = walsh_transform(tt);
    const auto nl = nonlinearity(spec);
    if (!out.imbalanced || nl > *out.imbalanced) out.imbalanced = nl;
    if (is_balanced(spec) && (!out.balanced || nl > *out.balanced)) out.balanced = nl;
  }
  return out;
}

std::string opt_str(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : "none"; }

}  // namespace

int main() {
  std::cout << "monofun acceptance suite (budget " << kBudget << ", " << kRuns << " runs, seed " << kSeed << ", "
            << workers() << " worker threads)" << std::endl;

  report("C1", "majority row exact, spectral agreement n<=12", [] {
    const std::int64_t expected[] = {10, 22, 44, 93, 186, 386, 772, 1586, 3172, 6476};
    Outcome o{true, ""};
    for (int n = 5; n <= 14; ++n) {
      const auto exact = threshold_nonlinearity_exact(majority_spec(n));
      if (exact != expected[n - 5]) {
        o.pass = false;
        o.detail += "n=" + std::to_string(n) + " got " + std::to_string(exact) + "; ";
      }
      if (n <= 12) {
        const auto spectral = nonlinearity(walsh_transform(threshold_table(majority_spec(n))));
        if (spectral != exact) {
          o.pass = false;
          o.detail += "n=" + std::to_string(n) + " spectral " + std::to_string(spectral) + "; ";
        }
      }
    }
    if (o.pass) o.detail = "10 values exact, 8 spectral matches";
    return o;
  }, 10.0);

  report("C2", "monotone M-bound within 0.05", [] {
    const double expected[] = {12, 27, 55.5, 114.4, 237.1, 478.5, 977.6, 1975.1, 3975.2, 8013.1};
    Outcome o{true, ""};
    double worst = 0;
    for (int n = 5; n <= 14; ++n) {
      const double got = monotone_upper_bound(n).bound;
      const double err = std::abs(got - expected[n - 5]);
      worst = std::max(worst, err);
      if (err > kBoundTolerance) {
        o.pass = false;
        o.detail += "n=" + std::to_string(n) + " got " + format_double(got) + "; ";
      }
    }
    o.detail += "max |error| " + format_double(worst) + ", n=6 bound " + format_double(monotone_upper_bound(6).bound);
    return o;
  }, 1.0);

  report("C3", "fast WHT equals naive, Parseval", [] {
    std::uint64_t checked = 0;
    auto check = [&](const TruthTable& tt) {
      const auto fast = walsh_transform(tt);
      const auto naive = oracle::naive_walsh(tt);
      ++checked;
      if (fast.coeffs != naive) return false;
      std::int64_t energy = 0;
      for (auto w : fast.coeffs) energy += static_cast<std::int64_t>(w) * w;
      const auto size = static_cast<std::int64_t>(tt.size());
      return energy == size * size;
    };
    for (std::uint64_t f = 0; f < (1u << 16); ++f) {
      TruthTable tt(4);
      for (std::size_t x = 0; x < 16; ++x) tt.set(x, (f >> x) & 1U);
      if (!check(tt)) return Outcome{false, "mismatch at n=4 function " + std::to_string(f)};
    }
    Rng rng(31);
    for (int n = 5; n <= 10; ++n) {
      for (int i = 0; i < 1000; ++i) {
        if (!check(bitops::random_table(n, rng))) return Outcome{false, "mismatch at n=" + std::to_string(n)};
      }
    }
    return Outcome{true, std::to_string(checked) + " functions"};
  }, 60.0);

  report("C4", "monotonicity equals comparable-pairs check", [] {
    std::uint64_t checked = 0;
    std::uint64_t monotone = 0;
    auto check = [&](const TruthTable& tt) {
      const auto rep = monotonicity_report(tt);
      const bool brute = oracle::is_monotone_pairwise(tt);
      ++checked;
      monotone += brute;
      return rep.monotone() == brute && rep.violations == oracle::naive_violations(tt) &&
             rep.max_possible == oracle::naive_max_possible(tt);
    };
    for (int n = 1; n <= 3; ++n) {
      const std::uint64_t count = std::uint64_t{1} << (1u << n);
      for (std::uint64_t f = 0; f < count; ++f) {
        TruthTable tt(n);
        for (std::size_t x = 0; x < tt.size(); ++x) tt.set(x, (f >> x) & 1U);
        if (!check(tt)) return Outcome{false, "mismatch at n=" + std::to_string(n) + " function " + std::to_string(f)};
      }
    }
    // Uniform tables are almost never monotone, so a third of the sample is
    // random monotone functions and a third is those with one output flipped.
    Rng rng(47);
    for (int n = 6; n <= 10; ++n) {
      for (int i = 0; i < 10'000; ++i) {
        TruthTable tt(n);
        switch (i % 3) {
          case 0: tt = bitops::random_table(n, rng); break;
          case 1: tt = random_monotone(n, rng); break;
          default:
            tt = random_monotone(n, rng);
            tt.flip(rng.below(tt.size()));
        }
        if (!check(tt)) return Outcome{false, "mismatch at n=" + std::to_string(n)};
      }
    }
    return Outcome{true, std::to_string(checked) + " functions, " + std::to_string(monotone) + " monotone"};
  });

  report("C5", "encoding closure fuzz (TTw weight, GP arity/depth)", [] {
    Rng rng(59);
    std::uint64_t ttw_ops = 0;
    const std::vector<int> ttw_sizes = {1, 2, 5, 6, 7, 8};
    for (std::size_t k = 0; k < ttw_sizes.size(); ++k) {
      const int n = ttw_sizes[k];
      const std::size_t half = std::size_t{1} << (n - 1);
      std::vector<TtwGenome> pool;
      for (int i = 0; i < 8; ++i) pool.push_back(ttw_random(n, rng));
      const std::uint64_t until = 100'000 * (k + 1) / ttw_sizes.size();
      for (; ttw_ops < until; ++ttw_ops) {
        const auto& a = pool[rng.below(pool.size())];
        const auto& b = pool[rng.below(pool.size())];
        TtwGenome child = rng.coin() ? ttw_crossover(a, b, rng) : ttw_mutate(a, rng);
        if (child.bits().weight() != half) return Outcome{false, "TTw weight broken at n=" + std::to_string(n)};
        pool[rng.below(pool.size())] = std::move(child);
      }
    }
    std::uint64_t gp_ops = 0;
    for (int n : {5, 8, 10}) {
      GpParams p;
      p.num_vars = n;
      std::vector<GpGenome> pool;
      for (int i = 0; i < 16; ++i) pool.push_back(gp_random(p, rng));
      for (int i = 0; i < 3400; ++i) {
        const auto& a = pool[rng.below(pool.size())];
        const auto& b = pool[rng.below(pool.size())];
        GpGenome child = rng.coin() ? gp_crossover(a, b, p, rng) : gp_mutate(a, p, rng);
        ++gp_ops;
        if (!is_valid(child, p) || tree_depth(child.nodes) > p.max_depth) {
          return Outcome{false, "GP tree invalid: " + to_prefix_string(child)};
        }
        pool[rng.below(pool.size())] = std::move(child);
      }
    }
    return Outcome{true, std::to_string(ttw_ops) + " TTw ops, " + std::to_string(gp_ops) + " GP ops"};
  });

  // Evolution batches shared by C6 and C7.
  std::map<std::string, std::vector<RunRecord>> batches;
  std::map<std::string, double> batch_seconds;
  auto batch = [&](int n, Scenario sc) -> const std::vector<RunRecord>& {
    const std::string key = std::to_string(n) + (sc == Scenario::Balanced ? "bal" : "imb");
    if (!batches.count(key)) {
      const auto start = std::chrono::steady_clock::now();
      batches[key] = run_batch(evolution_config(n, Encoding::TT, sc), kRuns, workers());
      batch_seconds[key] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    return batches[key];
  };

  report("C6a", "n=5 imbalanced TT fit1 reaches 11 in >=20/30", [&] {
    const auto& runs = batch(5, Scenario::Imbalanced);
    const auto hits = count_at_least(runs, 11);
    return Outcome{hits >= 20, std::to_string(hits) + "/30; " + histogram(runs)};
  });
  report("C6b", "n=6 balanced TT reaches 22 in >=20/30", [&] {
    const auto& runs = batch(6, Scenario::Balanced);
    const auto hits = count_at_least(runs, 22);
    return Outcome{hits >= 20, std::to_string(hits) + "/30; " + histogram(runs)};
  });
  report("C6c", "n=7 imbalanced TT reaches >=46 in >=1/30", [&] {
    const auto& runs = batch(7, Scenario::Imbalanced);
    const auto hits = count_at_least(runs, 46);
    return Outcome{hits >= 1, std::to_string(hits) + "/30; " + histogram(runs)};
  });

  report("C7", "evolved >= random search (n=5..8), imbalanced best > majority (n=5..7)", [&] {
    Outcome o{true, ""};
    for (int n = 5; n <= 8; ++n) {
      const auto rs = random_search(n, kBudget, derive_seed(kSeed, 1000 + static_cast<std::uint64_t>(n)));
      const auto& imb = batch(n, Scenario::Imbalanced);
      std::size_t feasible = 0;
      for (const auto& r : imb) {
        if (!r.best.nonlinearity) continue;
        ++feasible;
        if (rs.imbalanced && *r.best.nonlinearity < *rs.imbalanced) o.pass = false;
      }
      o.detail += "n=" + std::to_string(n) + " random " + opt_str(rs.imbalanced) + " (" +
                  std::to_string(rs.monotone_hits) + " monotone hits) evolved min " +
                  opt_str([&] {
                    std::optional<std::int64_t> m;
                    for (const auto& r : imb) {
                      if (r.best.nonlinearity && (!m || *r.best.nonlinearity < *m)) m = r.best.nonlinearity;
                    }
                    return m;
                  }()) +
                  " over " + std::to_string(feasible) + " feasible";
      if (n == 6) {
        for (const auto& r : batch(6, Scenario::Balanced)) {
          if (r.best.nonlinearity && rs.balanced && *r.best.nonlinearity < *rs.balanced) o.pass = false;
        }
        o.detail += ", balanced random " + opt_str(rs.balanced);
      }
      if (n <= 7) {
        const auto majority = threshold_nonlinearity_exact(majority_spec(n));
        const auto best = best_nl(imb);
        if (!best || *best <= majority) o.pass = false;
        o.detail += ", best " + opt_str(best) + " vs majority " + std::to_string(majority);
      }
      o.detail += "; ";
    }
    return o;
  });

  report("C8", "penalty bias at n=6: fit1 mean increasing on 1..32, fit2 decreasing on 32..63", [] {
    const auto fit1 = penalty_sample(6, kPenaltySamplesFit1, PenaltyVariant::Fit1, kSeed);
    const auto fit2 = penalty_sample(6, kPenaltySamplesFit2, PenaltyVariant::Fit2, kSeed);
    Outcome o{true, ""};
    double min_step1 = 1e9;
    for (std::size_t w = 1; w < 32; ++w) {
      const double step = fit1[w + 1].mean - fit1[w].mean;
      min_step1 = std::min(min_step1, step);
      if (!(step > 0)) {
        o.pass = false;
        o.detail += "fit1 drop at w=" + std::to_string(w) + "; ";
      }
    }
    double min_step2 = 1e9;
    for (std::size_t w = 32; w < 63; ++w) {
      const double step = fit2[w].mean - fit2[w + 1].mean;
      min_step2 = std::min(min_step2, step);
      if (!(step > 0)) {
        o.pass = false;
        o.detail += "fit2 rise at w=" + std::to_string(w) + "; ";
      }
    }
    o.detail += "fit1 mean " + format_double(fit1[1].mean) + " -> " + format_double(fit1[32].mean) +
                " (min step " + format_double(min_step1) + "), fit2 mean " + format_double(fit2[32].mean) + " -> " +
                format_double(fit2[63].mean) + " (min step " + format_double(min_step2) + ")";
    return o;
  });

  report("C9", "determinism across executions and parallelism", [] {
    for (auto enc : {Encoding::TT, Encoding::TTw, Encoding::GP}) {
      for (auto sc : {Scenario::Balanced, Scenario::Imbalanced}) {
        EaConfig c = evolution_config(6, enc, sc);
        c.variant = sc == Scenario::Imbalanced ? PenaltyVariant::Fit3 : PenaltyVariant::Fit1;
        c.evaluation_budget = 20'000;
        c.population_size = 100;
        auto dump = [](const std::vector<RunRecord>& runs) {
          std::string s;
          for (const auto& r : runs) s += run_csv_row(r, false) + "\n" + to_json(r, false).dump() + "\n";
          return s;
        };
        const auto first = dump(run_batch(c, 4, 1));
        const auto second = dump(run_batch(c, 4, 1));
        const auto threaded = dump(run_batch(c, 4, 3));
        if (first != second || first != threaded) {
          return Outcome{false, std::string("records differ for ") + std::string(to_string(enc))};
        }
      }
    }
    return Outcome{true, "3 encodings x 2 scenarios x 4 runs identical (serial twice, 3 threads)"};
  });

  report("C10", "feasibility at n=9,10 for TT and GP", [] {
    Outcome o{true, ""};
    for (int n : {9, 10}) {
      for (auto enc : {Encoding::TT, Encoding::GP}) {
        const auto runs = run_batch(evolution_config(n, enc, Scenario::Imbalanced), kFeasibilityRuns, workers());
        const auto best = best_nl(runs);
        if (!best) o.pass = false;
        o.detail += "n=" + std::to_string(n) + " " + std::string(to_string(enc)) + " best " + opt_str(best) + "; ";
      }
    }
    return o;
  });

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAIL") << std::endl;
  return failures == 0 ? 0 : 1;
}
