// Copyright 2026 The monofun Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "monofun/encodings.hpp"
#include "monofun/error.hpp"
#include "monofun/fitness.hpp"
#include "monofun/rng.hpp"

namespace monofun {

struct EaConfig {
  int n = 5;
  Encoding encoding = Encoding::TT;
  Scenario scenario = Scenario::Imbalanced;
  PenaltyVariant variant = PenaltyVariant::Fit1;
  std::size_t population_size = 500;
  /// Total fitness evaluations, initial population included.
  std::uint64_t evaluation_budget = 1'000'000;
  double mutation_probability = 0.5;
  std::uint64_t seed = 1;
  int gp_max_depth = 8;

  void validate() const {
    if (n < 1 || n > kMaxVariables) throw ParameterError("n must be in [1, 20]");
    if (population_size < 3) throw ParameterError("population_size must be at least 3");
    if (!(mutation_probability >= 0.0 && mutation_probability <= 1.0)) {
      throw ParameterError("mutation_probability must be in [0, 1]");
    }
    if (scenario == Scenario::Balanced && variant != PenaltyVariant::Fit1) {
      throw ParameterError("the balanced scenario uses the raw penalty (fit1) only");
    }
    if (encoding == Encoding::GP && gp_max_depth < 1) throw ParameterError("gp_max_depth must be positive");
  }

  GpParams gp_params() const {
    GpParams p;
    p.num_vars = n;
    p.max_depth = gp_max_depth;
    p.init_max_depth = std::min(p.init_max_depth, gp_max_depth);
    p.init_min_depth = std::min(p.init_min_depth, p.init_max_depth);
    return p;
  }

  friend bool operator==(const EaConfig&, const EaConfig&) = default;
};

struct TrajectoryPoint {
  std::uint64_t evaluation = 0;
  double best_fitness = 0.0;
  friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

struct RunRecord {
  /// Echo of the configuration actually run (seed is the per-run seed).
  EaConfig config;
  std::size_t run_index = 0;
  FitnessReport best;
  std::string best_genome;
  std::uint64_t evaluations_used = 0;
  /// Best-so-far fitness, one point per improvement.
  std::vector<TrajectoryPoint> trajectory;
  double wall_time_seconds = 0.0;

  double best_fitness() const { return best.fitness; }
  std::optional<std::int64_t> best_nonlinearity() const { return best.nonlinearity; }
};

/// Three distinct indices in [0, size), uniformly over ordered triples.
inline std::array<std::size_t, 3> pick_three_distinct(std::uint64_t size, Rng& rng) {
  std::array<std::size_t, 3> pick{};
  pick[0] = rng.below(size);
  pick[1] = rng.below(size - 1);
  if (pick[1] >= pick[0]) ++pick[1];
  const std::size_t lo = std::min(pick[0], pick[1]);
  const std::size_t hi = std::max(pick[0], pick[1]);
  pick[2] = rng.below(size - 2);
  if (pick[2] >= lo) ++pick[2];
  if (pick[2] >= hi) ++pick[2];
  return pick;
}

/// Steady-state EA with 3-tournament elimination.
///
/// Each iteration draws three distinct individuals, removes the least fit
/// (ties: lowest population index), crosses the two survivors in random
/// order, mutates the child with probability p_mut and puts it in the freed
/// slot. Every evaluation, initial population included, uses one unit of
/// budget; the initial population is always evaluated in full.
template <GenomeEncoding Enc>
RunRecord evolve(const EaConfig& config, const Enc& encoding) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  using Genome = typename Enc::Genome;
  struct Individual {
    Genome genome;
    FitnessReport fitness;
  };

  Rng rng(config.seed);
  RunRecord record;
  record.config = config;

  auto evaluate_genome = [&](const Genome& g) {
    return evaluate(encoding.decode(g), config.scenario, config.variant);
  };
  auto consider = [&](const Genome& g, const FitnessReport& f) {
    ++record.evaluations_used;
    if (record.trajectory.empty() || compare_fitness(f, record.best) > 0) {
      record.best = f;
      record.best_genome = encoding.serialize(g);
      record.trajectory.push_back({record.evaluations_used, f.fitness});
    }
  };

  std::vector<Individual> population;
  population.reserve(config.population_size);
  for (std::size_t i = 0; i < config.population_size; ++i) {
    Genome g = encoding.random(rng);
    FitnessReport f = evaluate_genome(g);
    consider(g, f);
    population.push_back({std::move(g), std::move(f)});
  }

  const std::uint64_t size = config.population_size;
  while (record.evaluations_used < config.evaluation_budget) {
    const auto pick = pick_three_distinct(size, rng);

    std::size_t worst = pick[0];
    for (std::size_t k = 1; k < 3; ++k) {
      const auto order = compare_fitness(population[pick[k]].fitness, population[worst].fitness);
      if (order < 0 || (order == 0 && pick[k] < worst)) worst = pick[k];
    }
    std::array<std::size_t, 2> parents{};
    std::size_t m = 0;
    for (std::size_t idx : pick) {
      if (idx != worst) parents[m++] = idx;
    }
    if (rng.coin()) std::swap(parents[0], parents[1]);

    Genome child = encoding.crossover(population[parents[0]].genome, population[parents[1]].genome, rng);
    if (rng.bernoulli(config.mutation_probability)) child = encoding.mutate(child, rng);
    FitnessReport f = evaluate_genome(child);
    consider(child, f);
    population[worst] = {std::move(child), std::move(f)};
  }

  record.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

/// One run of the configured encoding.
inline RunRecord run(const EaConfig& config) {
  config.validate();
  switch (config.encoding) {
    case Encoding::TT: return evolve(config, TtEncoding(config.n));
    case Encoding::TTw: return evolve(config, TtwEncoding(config.n));
    case Encoding::GP: return evolve(config, GpEncoding(config.gp_params()));
  }
  throw ParameterError("unknown encoding");
}

using RunCallback = std::function<void(const RunRecord&)>;

/// Independent runs with seeds derive_seed(config.seed, run_index). Records
/// are returned in run order and do not depend on `parallelism` (wall time
/// aside). `on_complete`, if set, is invoked on the calling thread as each
/// run finishes, in completion order.
inline std::vector<RunRecord> run_batch(const EaConfig& config, std::size_t runs, std::size_t parallelism,
                                        const RunCallback& on_complete = {}) {
  config.validate();
  if (runs < 1) throw ParameterError("run_batch needs at least one run");
  std::vector<RunRecord> records(runs);
  auto run_one = [&](std::size_t i) {
    EaConfig c = config;
    c.seed = derive_seed(config.seed, i);
    RunRecord r = run(c);
    r.run_index = i;
    return r;
  };

  const std::size_t workers = std::clamp<std::size_t>(parallelism, 1, runs);
  if (workers == 1) {
    for (std::size_t i = 0; i < runs; ++i) {
      records[i] = run_one(i);
      if (on_complete) on_complete(records[i]);
    }
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::condition_variable done_cv;
  std::deque<std::size_t> finished;
  std::exception_ptr failure;
  std::size_t active = workers;

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= runs) break;
        try {
          RunRecord r = run_one(i);
          std::lock_guard lock(mutex);
          records[i] = std::move(r);
          finished.push_back(i);
        } catch (...) {
          std::lock_guard lock(mutex);
          if (!failure) failure = std::current_exception();
          next.store(runs);
        }
        done_cv.notify_one();
      }
      std::lock_guard lock(mutex);
      --active;
      done_cv.notify_one();
    });
  }

  std::exception_ptr callback_failure;
  {
    std::unique_lock lock(mutex);
    for (;;) {
      done_cv.wait(lock, [&] { return !finished.empty() || active == 0; });
      while (!finished.empty()) {
        const std::size_t i = finished.front();
        finished.pop_front();
        if (on_complete && !callback_failure) {
          lock.unlock();
          try {
            on_complete(records[i]);
          } catch (...) {
            callback_failure = std::current_exception();
            next.store(runs);
          }
          lock.lock();
        }
      }
      if (active == 0 && finished.empty()) break;
    }
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  if (callback_failure) std::rethrow_exception(callback_failure);
  return records;
}

}  // namespace monofun
