#include "coverfollow/env.hpp"

#include <stdexcept>

namespace coverfollow {

double visibility(const WorldState& world, const std::vector<Vec3>& observers, const Vec3& eye) {
  if (observers.empty()) return 0.0;
  int seen = 0;
  for (const auto& o : observers)
    if (line_of_sight(world, o, eye)) ++seen;
  return static_cast<double>(seen) / static_cast<double>(observers.size());
}

NavigationEnv::NavigationEnv(Scenario scenario, EnvConfig config)
    : scenario_(std::move(scenario)), config_(std::move(config)) {
  world_ = make_world(scenario_, 0, config_.world);
}

void NavigationEnv::reset(std::uint64_t episode_seed) {
  world_ = make_world(scenario_, episode_seed, config_.world);
  world_.robot = spawn_robot(world_, scenario_.start_zone);
  world_.goal = scenario_.fixed_goal ? *scenario_.fixed_goal
                                     : sample_goal(world_, config_.goal_radius);
  steps_ = 0;
  done_ = false;
  history_.clear();
  windows_.clear();
  windows_.push_back(evaluate_window(world_, world_.robot, world_.goal, config_.dwa));
  verdict_ = perceive();
}

CoverVerdict NavigationEnv::perceive() const {
  return detect_cover(sense(world_, config_.sensor), {0.0, 0.0, 0.0});
}

ObservationMatrix NavigationEnv::observation() const {
  const std::vector<VelocityWindow> hist(windows_.begin(), windows_.end());
  return build_observation(hist, world_.robot, world_.goal, verdict_, config_.dwa);
}

NavigationEnv::StepResult NavigationEnv::step(VelocityCommand cmd) {
  if (done_) throw std::logic_error("step() called on a finished episode");
  const RobotState before = world_.robot;
  auto [next, event] = coverfollow::step(world_, cmd, config_.dwa.control_dt);
  world_ = std::move(next);
  ++steps_;

  history_.push_back({before.x, before.y, before.z});
  while (history_.size() > static_cast<std::size_t>(config_.reward.n_history))
    history_.pop_front();
  verdict_ = perceive();

  StepContext ctx;
  ctx.d_prev = distance(before.xy(), world_.goal);
  ctx.d_cur = distance(world_.robot.xy(), world_.goal);
  ctx.theta_prev = before.heading;
  ctx.theta_cur = world_.robot.heading;
  ctx.roll = world_.robot.roll;
  ctx.pitch = world_.robot.pitch;
  ctx.elevation_history.assign(history_.begin(), history_.end());
  ctx.h_cur = world_.robot.z;
  ctx.d_cover = verdict_.cover_distance;

  StepResult res;
  res.event = event;
  res.reward = total_reward(ctx, config_.reward);
  res.verdict = verdict_;
  res.visibility = visibility(
      world_, config_.observers,
      {world_.robot.x, world_.robot.y, world_.robot.z + config_.sensor.sensor_height});
  res.truncated = event == StepEvent::None && steps_ >= config_.max_steps;
  done_ = event != StepEvent::None || res.truncated;

  windows_.push_back(evaluate_window(world_, world_.robot, world_.goal, config_.dwa));
  while (windows_.size() > static_cast<std::size_t>(config_.dwa.n_obs)) windows_.pop_front();
  return res;
}

}  // namespace coverfollow
