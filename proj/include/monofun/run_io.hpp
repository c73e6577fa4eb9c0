// Copyright 2026 The monofun Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "monofun/ea.hpp"
#include "monofun/format.hpp"

// CSV rows and JSON detail documents for run records.
namespace monofun {

inline std::string optional_field(const std::optional<std::int64_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

inline std::string optional_field(const std::optional<std::uint64_t>& v) {
  return v ? std::to_string(*v) : std::string();
}

inline std::string run_csv_header(bool with_wall_time = true) {
  std::string h =
      "run_index,n,encoding,scenario,variant,population,budget,p_mut,seed,gp_max_depth,"
      "evaluations_used,penalty_raw,penalty_value,bal_deficit,nl,max_vals,fitness";
  if (with_wall_time) h += ",wall_time";
  return h;
}

inline std::string run_csv_row(const RunRecord& r, bool with_wall_time = true) {
  const EaConfig& c = r.config;
  std::string row;
  auto add = [&row](const std::string& field) {
    if (!row.empty()) row += ',';
    row += field;
  };
  add(std::to_string(r.run_index));
  add(std::to_string(c.n));
  add(std::string(to_string(c.encoding)));
  add(std::string(to_string(c.scenario)));
  add(std::string(to_string(c.variant)));
  add(std::to_string(c.population_size));
  add(std::to_string(c.evaluation_budget));
  add(format_double(c.mutation_probability));
  add(std::to_string(c.seed));
  add(std::to_string(c.gp_max_depth));
  add(std::to_string(r.evaluations_used));
  add(std::to_string(r.best.penalty_raw));
  add(format_double(r.best.penalty_normalized));
  add(std::to_string(r.best.bal_deficit));
  add(optional_field(r.best.nonlinearity));
  add(optional_field(r.best.max_vals_count));
  add(format_double(r.best.fitness));
  if (with_wall_time) add(format_double(r.wall_time_seconds));
  return row;
}

inline nlohmann::ordered_json to_json(const FitnessReport& f) {
  nlohmann::ordered_json j;
  j["penalty_raw"] = f.penalty_raw;
  j["max_possible"] = f.max_possible;
  j["penalty_value"] = f.penalty_normalized;
  j["bal_deficit"] = f.bal_deficit;
  j["nl"] = f.nonlinearity ? nlohmann::ordered_json(*f.nonlinearity) : nlohmann::ordered_json(nullptr);
  j["max_vals"] = f.max_vals_count ? nlohmann::ordered_json(*f.max_vals_count) : nlohmann::ordered_json(nullptr);
  j["fitness"] = f.fitness;
  return j;
}

inline nlohmann::ordered_json to_json(const EaConfig& c) {
  nlohmann::ordered_json j;
  j["n"] = c.n;
  j["encoding"] = to_string(c.encoding);
  j["scenario"] = to_string(c.scenario);
  j["variant"] = to_string(c.variant);
  j["population"] = c.population_size;
  j["budget"] = c.evaluation_budget;
  j["p_mut"] = c.mutation_probability;
  j["seed"] = c.seed;
  j["gp_max_depth"] = c.gp_max_depth;
  return j;
}

/// Detail document: configuration, best report and genome, trajectory.
inline nlohmann::ordered_json to_json(const RunRecord& r, bool with_wall_time = true) {
  nlohmann::ordered_json j;
  j["config"] = to_json(r.config);
  j["run_index"] = r.run_index;
  j["evaluations_used"] = r.evaluations_used;
  j["best"] = to_json(r.best);
  j["best_genome"] = r.best_genome;
  auto& traj = j["trajectory"] = nlohmann::ordered_json::array();
  for (const auto& p : r.trajectory) traj.push_back({p.evaluation, p.best_fitness});
  if (with_wall_time) j["wall_time_seconds"] = r.wall_time_seconds;
  return j;
}

}  // namespace monofun
