#include "coverfollow/harness/episode.hpp"

#include <chrono>
#include <cmath>

namespace coverfollow::harness {

EpisodeLog run_episode(Policy& policy, const Scenario& scenario, const EnvConfig& config,
                       std::uint64_t episode_seed, std::uint64_t policy_seed) {
  const auto started = std::chrono::steady_clock::now();
  NavigationEnv env(scenario, config);
  env.reset(episode_seed);
  Rng rng(policy_seed);

  EpisodeLog log;
  log.scenario_id = scenario.id;
  log.seed = episode_seed;
  log.goal = env.world().goal;
  log.dt = config.dwa.control_dt;
  StepRecord first;
  first.tick = env.world().tick;
  first.state = env.world().robot;
  first.verdict = env.verdict();
  log.records.push_back(first);

  while (!env.done()) {
    StepRecord rec;
    rec.command = policy.act(env, rng);
    const auto res = env.step(rec.command);
    rec.tick = env.world().tick;
    rec.state = env.world().robot;
    rec.reward = res.reward;
    rec.verdict = res.verdict;
    rec.event = res.event;
    log.records.push_back(rec);
    log.terminal = res.event;
  }
  log.wall_clock_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return log;
}

bool success(const EpisodeLog& log) { return log.terminal == StepEvent::GoalReached; }

double trajectory_length(const EpisodeLog& log) {
  double total = 0.0;
  for (std::size_t k = 1; k < log.records.size(); ++k)
    total += distance(log.records[k - 1].state.xy(), log.records[k].state.xy());
  return total;
}

double in_cover_ratio(const EpisodeLog& log) {
  if (log.steps() == 0) return 0.0;
  int covered = 0;
  for (std::size_t k = 1; k < log.records.size(); ++k)
    if (log.records[k].verdict.is_cover) ++covered;
  return static_cast<double>(covered) / log.steps();
}

double cumulative_abs_dh(const EpisodeLog& log) {
  double total = 0.0;
  for (std::size_t k = 1; k < log.records.size(); ++k)
    total += std::abs(log.records[k].state.z - log.records[k - 1].state.z);
  return total;
}

}  // namespace coverfollow::harness
