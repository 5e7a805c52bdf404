#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "coverfollow/harness/episode.hpp"

namespace coverfollow::harness {

struct Metrics {
  int episodes = 0;
  double success_rate = 0.0;  ///< percent
  /// Mean planar path length over all episodes.
  double mean_trajectory_length = 0.0;
  /// Mean wall-clock seconds per episode. Not reproducible across runs.
  double mean_execution_time = 0.0;
  /// Mean simulated seconds per episode.
  double mean_sim_time = 0.0;
  /// Covered control steps over all control steps, pooled across episodes.
  double in_cover_ratio = 0.0;
  double mean_cumulative_abs_dh = 0.0;
};

/// Throws EmptyInput for no logs.
Metrics aggregate(std::span<const EpisodeLog> logs);

struct ReportRow {
  std::string policy;
  std::string scenario_id;
  Metrics metrics;
};

struct Report {
  std::uint64_t seed = 0;
  int episodes_per_cell = 0;
  std::vector<ReportRow> rows;
};

/// Episode e on scenario s gets the same reset seed for every policy, so the
/// policies face identical spawn poses and goals.
std::uint64_t compare_episode_seed(std::uint64_t seed, std::size_t scenario_index, int episode);
std::uint64_t compare_policy_seed(std::uint64_t seed, std::size_t policy_index,
                                  std::size_t scenario_index, int episode);

/// Runs every policy on every scenario for episodes_per_cell episodes.
Report compare(std::span<const std::shared_ptr<Policy>> policies,
               std::span<const Scenario> scenarios, int episodes_per_cell, std::uint64_t seed,
               const EnvConfig& config, std::vector<EpisodeLog>* logs_out = nullptr);

/// Fixed-width text table, one row per (policy, scenario).
std::string format_table(const Report& report, bool include_timing = true);

}  // namespace coverfollow::harness
