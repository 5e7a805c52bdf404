#include "coverfollow/harness/policy.hpp"

#include "coverfollow/errors.hpp"

namespace coverfollow::harness {

VelocityCommand DwaPolicy::act(const NavigationEnv& env, Rng&) {
  try {
    return select_velocity_dwa(env.window());
  } catch (const NoAdmissibleVelocity&) {
    return emergency_stop(env.window());
  }
}

VelocityCommand RandomPolicy::act(const NavigationEnv& env, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a = u(rng);
  const double b = u(rng);
  return project_to_feasible({a, b}, env.window());
}

VelocityCommand AgentPolicy::act(const NavigationEnv& env, Rng&) {
  const auto obs = env.observation();
  return project_to_feasible(drl::policy_action(agent_, obs.values), env.window());
}

}  // namespace coverfollow::harness
