#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "coverfollow/drl/ddpg.hpp"
#include "coverfollow/drl/replay_buffer.hpp"

namespace coverfollow::testing {

/// Two states that alternate deterministically. Leaving state 0 pays 1, leaving
/// state 1 pays 0, and every action pays a quadratic effort cost.
struct ToyMdp {
  double gamma = 0.5;
  double effort = 0.5;

  static std::vector<double> obs(int s) { return s == 0 ? std::vector<double>{1, 0} : std::vector<double>{0, 1}; }
  static int next(int s) { return 1 - s; }
  double reward(int s, const drl::Action& a) const {
    return (s == 0 ? 1.0 : 0.0) - effort * (a[0] * a[0] + a[1] * a[1]);
  }

  /// Value iteration over a 41 x 41 action grid until the update is below tol.
  std::array<double, 2> value_iteration(double tol = 1e-10) const {
    std::array<double, 2> v{0, 0};
    for (;;) {
      std::array<double, 2> nv{};
      for (int s = 0; s < 2; ++s) {
        double best = -1e300;
        for (int i = 0; i <= 40; ++i)
          for (int j = 0; j <= 40; ++j) {
            const drl::Action a{-1 + i * 0.05, -1 + j * 0.05};
            best = std::max(best, reward(s, a) + gamma * v[next(s)]);
          }
        nv[s] = best;
      }
      const double delta = std::max(std::abs(nv[0] - v[0]), std::abs(nv[1] - v[1]));
      v = nv;
      if (delta < tol) return v;
    }
  }

  double q_star(int s, const drl::Action& a, const std::array<double, 2>& v) const {
    return reward(s, a) + gamma * v[next(s)];
  }

  /// Uniform-action transitions from both states.
  drl::ReplayBuffer dataset(int n, Rng& rng) const {
    drl::ReplayBuffer buf(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      const int s = k % 2;
      const drl::Action a{uniform(rng, -1, 1), uniform(rng, -1, 1)};
      buf.push({obs(s), a, reward(s, a), obs(next(s)), false});
    }
    return buf;
  }
};

struct ToyRun {
  std::vector<double> losses;
  double max_error = 0.0;  ///< worst |Q - Q*| over a grid of probe actions
};

inline drl::DdpgConfig toy_agent_config() {
  drl::DdpgConfig cfg;
  cfg.critic_opt.learning_rate = 1e-3;
  cfg.actor_opt.learning_rate = 1e-3;
  return cfg;
}

inline ToyRun run_toy(std::uint64_t seed, int updates = 500, double tau = 0.05) {
  const ToyMdp mdp;
  Rng rng(seed);
  const auto buf = mdp.dataset(1000, rng);
  drl::Agent agent = drl::make_agent(2, toy_agent_config(), rng);
  ToyRun run;
  for (int u = 0; u < updates; ++u) {
    const auto batch = buf.sample(64, rng);
    run.losses.push_back(drl::ddpg_update(agent, batch, mdp.gamma, tau).critic_loss);
  }
  const auto v = mdp.value_iteration();
  for (int s = 0; s < 2; ++s)
    for (double a0 : {-0.5, 0.0, 0.5})
      for (double a1 : {-0.5, 0.0, 0.5}) {
        const drl::Action a{a0, a1};
        const auto o = ToyMdp::obs(s);
        run.max_error = std::max(run.max_error, std::abs(drl::critic_value(agent, o, a) - mdp.q_star(s, a, v)));
      }
  return run;
}

}  // namespace coverfollow::testing
