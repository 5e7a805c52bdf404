#include "coverfollow/harness/metrics.hpp"

#include <cstdio>
#include <sstream>

#include "coverfollow/errors.hpp"

namespace coverfollow::harness {

Metrics aggregate(std::span<const EpisodeLog> logs) {
  if (logs.empty()) throw EmptyInput("aggregate: no episode logs");
  Metrics m;
  m.episodes = static_cast<int>(logs.size());
  int successes = 0;
  long steps = 0;
  long covered = 0;
  double length_sum = 0.0;
  for (const auto& log : logs) {
    if (success(log)) ++successes;
    length_sum += trajectory_length(log);
    m.mean_execution_time += log.wall_clock_s;
    m.mean_sim_time += log.sim_time_s();
    m.mean_cumulative_abs_dh += cumulative_abs_dh(log);
    for (std::size_t k = 1; k < log.records.size(); ++k) {
      ++steps;
      if (log.records[k].verdict.is_cover) ++covered;
    }
  }
  const double n = static_cast<double>(logs.size());
  m.success_rate = 100.0 * successes / n;
  m.mean_trajectory_length = length_sum / n;
  m.mean_execution_time /= n;
  m.mean_sim_time /= n;
  m.mean_cumulative_abs_dh /= n;
  m.in_cover_ratio = steps > 0 ? static_cast<double>(covered) / steps : 0.0;
  return m;
}

std::uint64_t compare_episode_seed(std::uint64_t seed, std::size_t scenario_index, int episode) {
  return derive_seed(seed, {3, scenario_index, static_cast<std::uint64_t>(episode)});
}

std::uint64_t compare_policy_seed(std::uint64_t seed, std::size_t policy_index,
                                  std::size_t scenario_index, int episode) {
  return derive_seed(seed,
                     {4, policy_index, scenario_index, static_cast<std::uint64_t>(episode)});
}

Report compare(std::span<const std::shared_ptr<Policy>> policies,
               std::span<const Scenario> scenarios, int episodes_per_cell, std::uint64_t seed,
               const EnvConfig& config, std::vector<EpisodeLog>* logs_out) {
  if (policies.empty() || scenarios.empty() || episodes_per_cell <= 0)
    throw EmptyInput("compare: need at least one policy, scenario and episode");
  Report report;
  report.seed = seed;
  report.episodes_per_cell = episodes_per_cell;
  for (std::size_t p = 0; p < policies.size(); ++p) {
    for (std::size_t s = 0; s < scenarios.size(); ++s) {
      std::vector<EpisodeLog> logs;
      logs.reserve(episodes_per_cell);
      for (int e = 0; e < episodes_per_cell; ++e) {
        logs.push_back(run_episode(*policies[p], scenarios[s], config,
                                   compare_episode_seed(seed, s, e),
                                   compare_policy_seed(seed, p, s, e)));
      }
      report.rows.push_back({policies[p]->name(), scenarios[s].id, aggregate(logs)});
      if (logs_out) logs_out->insert(logs_out->end(), logs.begin(), logs.end());
    }
  }
  return report;
}

std::string format_table(const Report& report, bool include_timing) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %-28s %8s %10s %9s %9s %10s", "policy", "scenario",
                "success%", "length_m", "sim_s", "cover", "sum|dh|");
  out << line;
  if (include_timing) out << "    wall_s";
  out << '\n';
  for (const auto& row : report.rows) {
    const auto& m = row.metrics;
    std::snprintf(line, sizeof line, "%-12s %-28s %8.1f %10.3f %9.3f %9.3f %10.3f",
                  row.policy.c_str(), row.scenario_id.c_str(), m.success_rate,
                  m.mean_trajectory_length, m.mean_sim_time, m.in_cover_ratio,
                  m.mean_cumulative_abs_dh);
    out << line;
    if (include_timing) {
      std::snprintf(line, sizeof line, " %9.4f", m.mean_execution_time);
      out << line;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace coverfollow::harness
