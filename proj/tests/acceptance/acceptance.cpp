// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "../support/gradcheck.hpp"
#include "../support/oracles.hpp"
#include "../support/toy_mdp.hpp"
#include "coverfollow/drl/train.hpp"
#include "coverfollow/dwa.hpp"
#include "coverfollow/env.hpp"
#include "coverfollow/harness/episode.hpp"
#include "coverfollow/harness/io.hpp"
#include "coverfollow/harness/metrics.hpp"
#include "coverfollow/harness/policy.hpp"
#include "coverfollow/perception.hpp"
#include "coverfollow/reward.hpp"
#include "coverfollow/scenario.hpp"

using namespace coverfollow;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome reward_oracle() {
  Rng rng(1);
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    StepContext ctx;
    ctx.d_prev = uniform(rng, 0, 15);
    ctx.d_cur = uniform(rng, 0, 15);
    ctx.theta_prev = uniform(rng, -std::numbers::pi, std::numbers::pi);
    ctx.theta_cur = uniform(rng, -std::numbers::pi, std::numbers::pi);
    ctx.roll = uniform(rng, -0.6, 0.6);
    ctx.pitch = uniform(rng, -0.6, 0.6);
    ctx.h_cur = uniform(rng, -2, 2);
    std::vector<double> hist;
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      hist.push_back(uniform(rng, -2, 2));
      ctx.elevation_history.push_back({0, 0, hist.back()});
    }
    ctx.d_cover = rng() % 5 == 0 ? kNoCover : uniform(rng, 0, 3);
    RewardWeights w;
    w.n_history = 1 + static_cast<int>(rng() % 6);
    const auto b = total_reward(ctx, w);
    const double expect = oracle::r_goal(ctx.d_prev, ctx.d_cur) + oracle::r_dir(ctx.theta_cur, ctx.theta_prev) +
                          oracle::r_stab(ctx.roll, ctx.pitch) +
                          oracle::r_elev(hist, ctx.h_cur, w.w_elev, w.n_history) +
                          oracle::r_cover(ctx.d_cover, w.w_min);
    worst = std::max(worst, std::abs(b.total - expect));
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-9 && secs < 1.0, fmt("max |error| %.3g, %.3f s", worst, secs)};
}

Outcome cover_oracle() {
  const auto t0 = Clock::now();
  Rng rng(2);
  const char* names[] = {"Tree", "bush", "Rock", "Cottage", "Building", "Houses", "DisabledVehicle", "Other", "car"};
  int mismatches = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = static_cast<int>(rng() % 12);
    std::vector<Detection> dets;
    std::vector<oracle::DetectionLite> lite;
    const Vec3 robot{uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)};
    for (int i = 0; i < n; ++i) {
      Detection d;
      d.class_name = names[rng() % 9];
      d.confidence = rng() % 4 == 0 ? 0.85 : uniform(rng, 0.5, 1.0);
      d.x_pos = uniform(rng, -8, 8);
      d.y_pos = uniform(rng, -2, 2);
      d.z_pos = uniform(rng, 0, 15);
      d.object_id = static_cast<int>(rng() % 20);
      dets.push_back(d);
      lite.push_back({d.class_name, d.confidence, d.x_pos, d.y_pos, d.z_pos, d.object_id});
    }
    const CoverVerdict v = detect_cover(dets, robot);
    const auto o = oracle::detect_cover(lite, robot.x, robot.y, robot.z);
    if (v.is_cover != o.is_cover || v.cover_distance != o.distance || v.nearest_object_id != o.object_id)
      ++mismatches;
  }
  Detection rock;
  rock.class_name = "Rock";
  rock.confidence = 1.0;
  rock.object_id = 1;
  rock.x_pos = -0.18054;
  rock.y_pos = -0.46727;
  rock.z_pos = 18.71081;
  const std::vector<Detection> fixture = {rock};
  const CoverVerdict rv = detect_cover(fixture, {0, 0, 0});
  const bool rock_ok = !rv.is_cover && std::abs(rv.cover_distance - 18.7176) < 1e-4;
  const double secs = seconds_since(t0);
  return {mismatches == 0 && rock_ok && secs < 5.0,
          fmt("%d mismatches in 10000 sets, rock fixture %s, %.2f s", mismatches, rock_ok ? "ok" : "wrong", secs)};
}

Outcome dwa_feasibility() {
  const DwaConfig cfg;
  const ScenarioKind kinds[] = {ScenarioKind::ForestJungle, ScenarioKind::NormalElevation,
                                ScenarioKind::LowHighElevation};
  Rng rng(3);
  int limit_violations = 0, unsafe = 0;
  long admissible_checked = 0;
  for (int k = 0; k < 10000; ++k) {
    static std::vector<WorldState> worlds = [&] {
      std::vector<WorldState> out;
      for (int i = 0; i < 3; ++i) out.push_back(make_world(generate_scenario({kinds[i], 10u + i}), 1));
      return out;
    }();
    WorldState w = worlds[k % 3];
    RobotState st;
    const Box2 nb = navigable_bounds(w);
    do {
      st.x = uniform(rng, nb.min.x, nb.max.x);
      st.y = uniform(rng, nb.min.y, nb.max.y);
    } while (collision_check(w, st.xy(), w.config.robot_radius));
    st.heading = uniform(rng, -std::numbers::pi, std::numbers::pi);
    st.v = uniform(rng, cfg.limits.v_min, cfg.limits.v_max);
    st.omega = uniform(rng, -cfg.limits.omega_max, cfg.limits.omega_max);
    settle_on_terrain(*w.grid, st);
    w.robot = st;
    const Vec2 goal{uniform(rng, nb.min.x, nb.max.x), uniform(rng, nb.min.y, nb.max.y)};
    w.goal = goal;
    const VelocityWindow win = evaluate_window(w, st, goal, cfg);
    VelocityCommand chosen = win.any_admissible() ? select_velocity_dwa(win) : emergency_stop(win);
    const VelocityCommand projected =
        project_to_feasible({uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5)}, win);
    if (!within_limits(chosen, st, cfg.limits, cfg.control_dt)) ++limit_violations;
    if (!within_limits(projected, st, cfg.limits, cfg.control_dt)) ++limit_violations;
    const int steps = static_cast<int>(std::lround(cfg.horizon / cfg.rollout_dt));
    for (const Candidate& c : win.candidates) {
      if (!c.admissible) continue;
      ++admissible_checked;
      WorldState sim = w;
      sim.goal = {-1e6, -1e6};
      for (int s = 0; s < steps; ++s) {
        StepEvent ev;
        std::tie(sim, ev) = step(sim, c.command(), cfg.rollout_dt);
        if (ev == StepEvent::Collision) {
          ++unsafe;
          break;
        }
      }
    }
  }
  return {limit_violations == 0 && unsafe == 0 && admissible_checked > 0,
          fmt("%d limit violations, %d colliding of %ld admissible rollouts", limit_violations, unsafe,
              admissible_checked)};
}

Outcome gradient_check() {
  Rng rng(4);
  double worst = 0.0;
  for (int n = 0; n < 50; ++n) {
    const drl::Mlp net = testing::random_net(rng);
    const Eigen::VectorXd x = Eigen::VectorXd::NullaryExpr(net.input_size(), [&] { return uniform(rng, -1, 1); });
    const Eigen::VectorXd u = Eigen::VectorXd::NullaryExpr(net.output_size(), [&] { return uniform(rng, -1, 1); });
    worst = std::max(worst, testing::gradient_check(net, x, u).max_rel_error);
  }
  return {worst <= 1e-4, fmt("max relative error %.3g over 50 networks", worst)};
}

Outcome toy_convergence() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) worst = std::max(worst, testing::run_toy(seed, 500).max_error);
  return {worst <= 0.1, fmt("max |Q - Q*| %.4f after 500 updates (5 seeds)", worst)};
}

Outcome goal_radius() {
  const ScenarioKind kinds[] = {ScenarioKind::LowElevation, ScenarioKind::NormalElevation,
                                ScenarioKind::LowHighElevation, ScenarioKind::ForestJungle,
                                ScenarioKind::NormalElevation};
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const Scenario s = generate_scenario({kinds[i], static_cast<std::uint64_t>(i)});
    for (int k = 0; k < 2000; ++k) {
      WorldState w = make_world(s, derive_seed(6, {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(k)}));
      w.robot = spawn_robot(w, s.start_zone);
      const RobotState spawn = w.robot;
      const Vec2 g = sample_goal(w);
      worst = std::max(worst, distance(g, spawn.xy()));
    }
  }
  return {worst <= 12.0, fmt("10000 goals, farthest %.4f m from spawn", worst)};
}

double final_success(const drl::TrainResult& r, int last) {
  int ok = 0;
  const int n = static_cast<int>(r.episodes.size());
  for (int i = std::max(0, n - last); i < n; ++i) ok += r.episodes[i].terminal == StepEvent::GoalReached;
  return 100.0 * ok / std::min(last, n);
}

Outcome desk_scale_learning() {
  const Scenario scenario = generate_scenario({ScenarioKind::NormalElevation, 1});
  const EnvConfig env_cfg;
  std::vector<double> rates;
  double slowest = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    drl::TrainConfig tc;
    tc.seed = seed;
    const auto t0 = Clock::now();
    const auto r = drl::train([&] { return NavigationEnv(scenario, env_cfg); }, tc);
    slowest = std::max(slowest, seconds_since(t0));
    rates.push_back(final_success(r, 10));
  }
  std::vector<double> sorted = rates;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[2];
  const std::vector<Scenario> scenarios = {scenario};
  const std::vector<std::shared_ptr<harness::Policy>> random = {std::make_shared<harness::RandomPolicy>()};
  const double random_rate = harness::compare(random, scenarios, 100, 7, env_cfg).rows[0].metrics.success_rate;
  return {slowest < 300.0 && median >= 60.0 && median - random_rate >= 30.0,
          fmt("final-10 success per seed %.0f/%.0f/%.0f/%.0f/%.0f%%, median %.0f%%, random %.0f%%, slowest run %.1f s",
              rates[0], rates[1], rates[2], rates[3], rates[4], median, random_rate, slowest)};
}

// Agents from several training seeds are pooled so the check reflects the
// training procedure rather than one lucky or unlucky run.
Outcome cover_following() {
  const Scenario corridor = make_cover_corridor(0);
  const EnvConfig env_cfg;
  const int seeds = 5;
  std::vector<std::shared_ptr<harness::Policy>> policies = {std::make_shared<harness::DwaPolicy>()};
  for (int seed = 0; seed < seeds; ++seed) {
    drl::TrainConfig tc;
    tc.seed = static_cast<std::uint64_t>(seed);
    const auto r = drl::train([&] { return NavigationEnv(corridor, env_cfg); }, tc);
    policies.push_back(std::make_shared<harness::AgentPolicy>(r.agent, "agent" + std::to_string(seed)));
  }
  const std::vector<Scenario> scenarios = {corridor};
  const auto report = harness::compare(policies, scenarios, 50, 8, env_cfg);
  const double dwa = report.rows[0].metrics.in_cover_ratio;
  double agent = 0.0;
  std::string per_seed;
  for (int i = 1; i <= seeds; ++i) {
    agent += report.rows[i].metrics.in_cover_ratio / seeds;
    per_seed += fmt("%s%.3f", i > 1 ? "/" : "", report.rows[i].metrics.in_cover_ratio);
  }
  return {agent - dwa >= 0.1, fmt("in_cover agents %.3f (per seed %s) vs dwa %.3f, gap %.3f", agent,
                                  per_seed.c_str(), dwa, agent - dwa)};
}

Outcome determinism() {
  const Scenario scenario = generate_scenario({ScenarioKind::NormalElevation, 2});
  const EnvConfig env_cfg;
  drl::TrainConfig tc;
  tc.episodes = 15;
  tc.seed = 9;
  auto run = [&] {
    const auto r = drl::train([&] { return NavigationEnv(scenario, env_cfg); }, tc);
    const std::vector<Scenario> scenarios = {scenario};
    const std::vector<std::shared_ptr<harness::Policy>> policies = {
        std::make_shared<harness::DwaPolicy>(), std::make_shared<harness::RandomPolicy>(),
        std::make_shared<harness::AgentPolicy>(r.agent)};
    std::vector<harness::EpisodeLog> logs;
    const auto report = harness::compare(policies, scenarios, 5, 3, env_cfg, &logs);
    std::string logs_text;
    for (const auto& log : logs) logs_text += harness::episode_log_to_json(log, false).dump();
    return std::tuple{harness::curve_text(r.curve), logs_text, harness::report_to_json(report, false).dump()};
  };
  const auto a = run(), b = run();
  const bool curves = std::get<0>(a) == std::get<0>(b);
  const bool logs = std::get<1>(a) == std::get<1>(b);
  const bool reports = std::get<2>(a) == std::get<2>(b);
  return {curves && logs && reports, fmt("curves %s, logs %s, reports %s", curves ? "identical" : "differ",
                                         logs ? "identical" : "differ", reports ? "identical" : "differ")};
}

}  // namespace

// Optional arguments select criteria by number.
int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"reward matches independent oracle", reward_oracle},
      {"cover detection matches brute force", cover_oracle},
      {"dynamic window feasibility", dwa_feasibility},
      {"backprop gradient check", gradient_check},
      {"toy MDP critic convergence", toy_convergence},
      {"goal radius contract", goal_radius},
      {"desk-scale learning", desk_scale_learning},
      {"cover-following behavior", cover_following},
      {"determinism", determinism},
  };
  int failed = 0;
  std::vector<bool> selected(criteria.size(), argc == 1);
  for (int a = 1; a < argc; ++a) {
    const int n = std::atoi(argv[a]);
    if (n >= 1 && n <= static_cast<int>(criteria.size())) selected[n - 1] = true;
  }
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected[i]) continue;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
