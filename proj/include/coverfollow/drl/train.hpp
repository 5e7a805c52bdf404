#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "coverfollow/drl/ddpg.hpp"
#include "coverfollow/env.hpp"

namespace coverfollow::drl {

struct TrainConfig {
  int episodes = 100;
  int steps_per_episode = 100;
  int batch_size = 64;
  double gamma = 0.99;
  double noise_sigma = 0.1;
  double tau = 0.005;
  std::uint64_t seed = 0;
  /// Uniform random actions for this many environment steps before the
  /// policy acts and updates begin.
  int warmup_steps = 1000;
  int updates_per_step = 1;
  std::size_t replay_capacity = kDefaultReplayCapacity;
  DdpgConfig network;
};

struct EpisodeSummary {
  double episode_return = 0.0;
  int steps = 0;
  StepEvent terminal = StepEvent::None;
};

struct TrainResult {
  Agent agent;
  std::vector<double> curve;  ///< summed reward per episode
  std::vector<EpisodeSummary> episodes;
};

using EnvFactory = std::function<NavigationEnv()>;

/// Seeds for the episode resets and the agent's own random stream.
std::uint64_t episode_seed(std::uint64_t seed, int episode);

/// Runs config.episodes episodes of DDPG with dynamic-window projection of
/// every action. Only collisions end the bootstrap; goal arrival and the
/// step limit both bootstrap from the successor state.
TrainResult train(const EnvFactory& env_factory, const TrainConfig& config);

}  // namespace coverfollow::drl
