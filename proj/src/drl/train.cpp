#include "coverfollow/drl/train.hpp"

#include <stdexcept>

namespace coverfollow::drl {
namespace {

constexpr std::uint64_t kEpisodeStream = 1;
constexpr std::uint64_t kAgentStream = 2;

void validate(const TrainConfig& c) {
  if (c.episodes < 0 || c.steps_per_episode <= 0 || c.batch_size <= 0 || c.warmup_steps < 0 ||
      c.updates_per_step < 0)
    throw std::invalid_argument("training counts must be positive");
  if (!(c.gamma > 0.0 && c.gamma < 1.0)) throw std::invalid_argument("gamma must be in (0, 1)");
  if (!(c.tau > 0.0 && c.tau <= 1.0)) throw std::invalid_argument("tau must be in (0, 1]");
}

}  // namespace

std::uint64_t episode_seed(std::uint64_t seed, int episode) {
  return derive_seed(seed, {kEpisodeStream, static_cast<std::uint64_t>(episode)});
}

TrainResult train(const EnvFactory& env_factory, const TrainConfig& config) {
  validate(config);
  NavigationEnv env = env_factory();
  EnvConfig env_cfg = env.config();
  env_cfg.max_steps = config.steps_per_episode;
  env = NavigationEnv(env.scenario(), env_cfg);
  const DwaConfig& dwa = env_cfg.dwa;

  Rng rng(derive_seed(config.seed, {kAgentStream}));
  TrainResult result{make_agent(observation_size(dwa), config.network, rng), {}, {}};
  Agent& agent = result.agent;
  ReplayBuffer buffer(config.replay_capacity);
  std::uniform_real_distribution<double> explore(-1.0, 1.0);

  long total_steps = 0;
  for (int ep = 0; ep < config.episodes; ++ep) {
    env.reset(episode_seed(config.seed, ep));
    std::vector<double> obs = env.observation().values;
    std::vector<Transition> episode;
    double max_cover = 0.0;
    double min_visibility = 1.0;
    EpisodeSummary summary;

    while (!env.done()) {
      Action raw{};
      if (total_steps < config.warmup_steps) {
        for (double& x : raw) x = explore(rng);
      } else {
        raw = actor_act(agent, obs, config.noise_sigma, rng);
      }
      const RobotState now = env.world().robot;
      const VelocityCommand cmd = project_to_feasible(raw, env.window());
      if (!within_limits(cmd, now, dwa.limits, dwa.control_dt))
        throw std::logic_error("projected command violates the dynamic window");

      const auto res = env.step(cmd);
      std::vector<double> next_obs = env.observation().values;
      summary.episode_return += res.reward.total;
      max_cover = std::max(max_cover, res.reward.r_cover);
      min_visibility = std::min(min_visibility, res.visibility);

      Transition t{std::move(obs), raw, res.reward.total, next_obs,
                   res.event == StepEvent::Collision};
      if (env_cfg.normalization.enabled) {
        episode.push_back(std::move(t));
      } else {
        buffer.push(std::move(t));
      }
      obs = std::move(next_obs);
      ++total_steps;
      summary.terminal = res.event;

      if (total_steps >= config.warmup_steps &&
          buffer.size() >= static_cast<std::size_t>(config.batch_size)) {
        for (int u = 0; u < config.updates_per_step; ++u) {
          const auto batch = buffer.sample(static_cast<std::size_t>(config.batch_size), rng);
          ddpg_update(agent, batch, config.gamma, config.tau);
        }
      }
    }

    if (env_cfg.normalization.enabled) {
      std::vector<double> rewards;
      for (const auto& t : episode) rewards.push_back(t.reward);
      rewards = normalize_episode(rewards, max_cover, min_visibility, env_cfg.normalization);
      for (std::size_t i = 0; i < episode.size(); ++i) {
        episode[i].reward = rewards[i];
        buffer.push(std::move(episode[i]));
      }
    }
    summary.steps = env.steps_taken();
    result.curve.push_back(summary.episode_return);
    result.episodes.push_back(summary);
  }
  return result;
}

}  // namespace coverfollow::drl
