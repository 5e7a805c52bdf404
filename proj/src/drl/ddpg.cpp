#include "coverfollow/drl/ddpg.hpp"

#include <algorithm>
#include <stdexcept>

#include "coverfollow/errors.hpp"

namespace coverfollow::drl {
namespace {

std::vector<int> layer_sizes(int in, const std::vector<int>& hidden, int out) {
  std::vector<int> s{in};
  s.insert(s.end(), hidden.begin(), hidden.end());
  s.push_back(out);
  return s;
}

Eigen::VectorXd to_vector(std::span<const double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::VectorXd critic_input(std::span<const double> obs, const Action& action) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(obs.size()) + kActionDim);
  x.head(static_cast<Eigen::Index>(obs.size())) = to_vector(obs);
  for (int i = 0; i < kActionDim; ++i) x(static_cast<Eigen::Index>(obs.size()) + i) = action[i];
  return x;
}

}  // namespace

Agent make_agent(int obs_dim, const DdpgConfig& cfg, Rng& rng) {
  if (obs_dim <= 0) throw DimensionMismatch("observation dimension must be positive");
  Agent a;
  a.obs_dim = obs_dim;
  a.actor = Mlp(layer_sizes(obs_dim, cfg.actor_hidden, kActionDim), OutputActivation::Tanh, rng);
  a.critic =
      Mlp(layer_sizes(obs_dim + kActionDim, cfg.critic_hidden, 1), OutputActivation::Identity, rng);
  a.actor_target = a.actor;
  a.critic_target = a.critic;
  a.actor_opt = OptState::for_network(a.actor, cfg.actor_opt);
  a.critic_opt = OptState::for_network(a.critic, cfg.critic_opt);
  return a;
}

Action policy_action(const Agent& agent, std::span<const double> obs) {
  if (static_cast<int>(obs.size()) != agent.obs_dim)
    throw DimensionMismatch("observation length does not match the agent");
  const Eigen::VectorXd y = mlp_forward(agent.actor, to_vector(obs));
  Action a{};
  for (int i = 0; i < kActionDim; ++i) a[i] = y(i);
  return a;
}

Action actor_act(const Agent& agent, std::span<const double> obs, double sigma, Rng& rng) {
  Action a = policy_action(agent, obs);
  if (sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, sigma);
    for (double& x : a) x += noise(rng);
  }
  for (double& x : a) x = std::clamp(x, -1.0, 1.0);
  return a;
}

double critic_value(const Agent& agent, std::span<const double> obs, const Action& action) {
  if (static_cast<int>(obs.size()) != agent.obs_dim)
    throw DimensionMismatch("observation length does not match the agent");
  return mlp_forward(agent.critic, critic_input(obs, action))(0);
}

void soft_update(Mlp& target, const Mlp& online, double tau) {
  auto& t = target.layers();
  const auto& o = online.layers();
  if (t.size() != o.size()) throw DimensionMismatch("target and online networks differ");
  for (std::size_t l = 0; l < t.size(); ++l) {
    if (t[l].weight.rows() != o[l].weight.rows() || t[l].weight.cols() != o[l].weight.cols())
      throw DimensionMismatch("target and online layer shapes differ");
    t[l].weight = tau * o[l].weight + (1.0 - tau) * t[l].weight;
    t[l].bias = tau * o[l].bias + (1.0 - tau) * t[l].bias;
  }
}

UpdateStats ddpg_update(Agent& agent, std::span<const Transition* const> batch, double gamma,
                        double tau) {
  if (batch.empty()) throw std::invalid_argument("ddpg_update needs a non-empty batch");
  const auto n = static_cast<Eigen::Index>(batch.size());
  const Eigen::Index od = agent.obs_dim;
  const double inv_n = 1.0 / static_cast<double>(n);

  Eigen::MatrixXd state_action(od + kActionDim, n);
  Eigen::MatrixXd next_obs(od, n);
  Eigen::VectorXd reward(n);
  Eigen::VectorXd not_done(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Transition& t = *batch[static_cast<std::size_t>(j)];
    if (static_cast<Eigen::Index>(t.obs.size()) != od ||
        static_cast<Eigen::Index>(t.next_obs.size()) != od)
      throw DimensionMismatch("transition observation length does not match the agent");
    state_action.col(j).head(od) = to_vector(t.obs);
    for (int i = 0; i < kActionDim; ++i) state_action(od + i, j) = t.action[i];
    next_obs.col(j) = to_vector(t.next_obs);
    reward(j) = t.reward;
    not_done(j) = t.done ? 0.0 : 1.0;
  }

  // TD targets from the target networks.
  Eigen::MatrixXd next_sa(od + kActionDim, n);
  next_sa.topRows(od) = next_obs;
  next_sa.bottomRows(kActionDim) = forward_batch(agent.actor_target, next_obs);
  const Eigen::VectorXd next_q = forward_batch(agent.critic_target, next_sa).row(0).transpose();
  const Eigen::VectorXd target = reward + gamma * not_done.cwiseProduct(next_q);

  UpdateStats stats;
  {
    ForwardCache cache;
    const Eigen::RowVectorXd q = forward_batch(agent.critic, state_action, &cache);
    const Eigen::RowVectorXd err = q - target.transpose();
    stats.critic_loss = err.squaredNorm() * inv_n;
    MlpGradients grads = MlpGradients::zeros_like(agent.critic);
    backward_batch(agent.critic, cache, 2.0 * inv_n * err, &grads, false);
    opt_step(agent.critic, grads, agent.critic_opt);
  }
  {
    const Eigen::MatrixXd obs = state_action.topRows(od);
    ForwardCache actor_cache;
    const Eigen::MatrixXd mu = forward_batch(agent.actor, obs, &actor_cache);
    Eigen::MatrixXd policy_sa(od + kActionDim, n);
    policy_sa.topRows(od) = obs;
    policy_sa.bottomRows(kActionDim) = mu;
    ForwardCache critic_cache;
    const Eigen::RowVectorXd q = forward_batch(agent.critic, policy_sa, &critic_cache);
    stats.actor_objective = q.sum() * inv_n;
    // Minimize -mean(Q): upstream -1/n on every sample.
    const Eigen::MatrixXd dq = Eigen::MatrixXd::Constant(1, n, -inv_n);
    const Eigen::MatrixXd d_input = backward_batch(agent.critic, critic_cache, dq, nullptr, true);
    MlpGradients grads = MlpGradients::zeros_like(agent.actor);
    backward_batch(agent.actor, actor_cache, d_input.bottomRows(kActionDim), &grads, false);
    opt_step(agent.actor, grads, agent.actor_opt);
  }
  soft_update(agent.actor_target, agent.actor, tau);
  soft_update(agent.critic_target, agent.critic, tau);
  return stats;
}

}  // namespace coverfollow::drl
