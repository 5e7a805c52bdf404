#pragma once

#include <span>
#include <vector>

#include "coverfollow/drl/adam.hpp"
#include "coverfollow/drl/mlp.hpp"
#include "coverfollow/drl/replay_buffer.hpp"

namespace coverfollow::drl {

struct DdpgConfig {
  std::vector<int> actor_hidden = {64, 64};
  std::vector<int> critic_hidden = {64, 64};
  AdamConfig actor_opt;   ///< learning rate 1e-4
  AdamConfig critic_opt;  ///< learning rate 1e-4
};

/// Actor mu(s) -> tanh-squashed action, critic Q(s, a) on the concatenated
/// [obs; action] input, and their slowly tracking target copies.
struct Agent {
  int obs_dim = 0;
  Mlp actor;
  Mlp critic;
  Mlp actor_target;
  Mlp critic_target;
  OptState actor_opt;
  OptState critic_opt;
};

Agent make_agent(int obs_dim, const DdpgConfig& cfg, Rng& rng);

/// Deterministic policy mu(s).
Action policy_action(const Agent& agent, std::span<const double> obs);

/// mu(s) plus N(0, sigma^2) noise per component, clipped to [-1, 1].
/// sigma = 0 draws nothing from rng.
Action actor_act(const Agent& agent, std::span<const double> obs, double sigma, Rng& rng);

/// Q(s, a) of the online critic.
double critic_value(const Agent& agent, std::span<const double> obs, const Action& action);

struct UpdateStats {
  double critic_loss = 0.0;      ///< mean squared TD error before the step
  double actor_objective = 0.0;  ///< mean Q(s, mu(s)) before the actor step
};

/// One DDPG step: the critic regresses toward r + gamma (1 - done) Q'(s', mu'(s')),
/// the actor ascends Q(s, mu(s)), then both targets move by tau.
UpdateStats ddpg_update(Agent& agent, std::span<const Transition* const> batch, double gamma,
                        double tau);

/// target <- tau * online + (1 - tau) * target.
void soft_update(Mlp& target, const Mlp& online, double tau);

}  // namespace coverfollow::drl
