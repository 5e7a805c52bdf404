#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "../support/fixtures.hpp"
#include "coverfollow/dwa.hpp"
#include "coverfollow/errors.hpp"

using namespace coverfollow;
using namespace coverfollow::testing;

namespace {

// Rolls a candidate forward with the simulator itself.
bool collides_when_simulated(const WorldState& world, const RobotState& state, VelocityCommand c,
                             const DwaConfig& cfg) {
  WorldState w = world;
  w.robot = state;
  w.goal = {-100, -100};  // never reached
  const int steps = static_cast<int>(std::lround(cfg.horizon / cfg.rollout_dt));
  for (int k = 0; k < steps; ++k) {
    StepEvent ev;
    std::tie(w, ev) = step(w, c, cfg.rollout_dt);
    if (ev == StepEvent::Collision) return true;
  }
  return false;
}

}  // namespace

TEST(DynamicWindow, Arithmetic) {
  DynamicLimits lim;
  lim.accel_v = 1.0;
  const auto win = dynamic_window({.v = 0.5}, lim, 0.1, 5, 5);
  EXPECT_NEAR(win.v_lo, 0.4, 1e-12);
  EXPECT_NEAR(win.v_hi, 0.6, 1e-12);
  EXPECT_EQ(win.candidates.size(), 25u);
  EXPECT_NEAR(win.at(2, 0).v, 0.5, 1e-12);
}

TEST(DynamicWindow, RestIsReachableAndLimitsClip) {
  const DynamicLimits lim;
  const auto rest = dynamic_window({}, lim, 0.25, 7, 7);
  EXPECT_TRUE(rest.contains({0, 0}));
  EXPECT_EQ(rest.at(0, 3).v, 0.0);
  EXPECT_EQ(rest.at(0, 3).omega, 0.0);
  const auto fast = dynamic_window({.v = lim.v_max, .omega = lim.omega_max}, lim, 0.25, 7, 7);
  EXPECT_EQ(fast.v_hi, lim.v_max);
  EXPECT_EQ(fast.w_hi, lim.omega_max);
  EXPECT_THROW(dynamic_window({}, lim, 0.25, 1, 7), std::invalid_argument);
}

TEST(DynamicWindow, EveryCandidateWithinLimits) {
  const DynamicLimits lim;
  Rng rng(3);
  for (int k = 0; k < 2000; ++k) {
    const RobotState s{.v = uniform(rng, 0, 1), .omega = uniform(rng, -1.5, 1.5)};
    for (const auto& c : dynamic_window(s, lim, 0.25, 7, 7).candidates)
      EXPECT_TRUE(within_limits(c.command(), s, lim, 0.25));
  }
}

TEST(Admissible, Cases) {
  const auto empty = world_at(custom_scenario(), {.x = 20, .y = 20});
  EXPECT_TRUE(admissible(empty, empty.robot, {0, 0}, 1.0, 0.1));
  EXPECT_TRUE(admissible(empty, empty.robot, {1, 1.5}, 1.0, 0.1));

  std::vector<CoverObject> wall;
  for (int i = 0; i < 9; ++i) wall.push_back(make_object(i, CoverClass::Other, 21.4, 18 + 0.5 * i, 0.3));
  const auto w = world_at(custom_scenario(wall), {.x = 20, .y = 20});
  EXPECT_FALSE(admissible(w, w.robot, {1, 0}, 1.0, 0.1));
  EXPECT_TRUE(admissible(w, w.robot, {0, 0}, 1.0, 0.1));
  EXPECT_THROW(admissible(w, w.robot, {0, 0}, 0.05, 0.1), std::invalid_argument);
}

TEST(Admissible, AgreesWithSimulatedRollout) {
  const auto s = generate_scenario({ScenarioKind::ForestJungle, 2});
  const DwaConfig cfg;
  WorldState w = make_world(s, 5);
  Rng rng(8);
  int flagged = 0;
  for (int k = 0; k < 300; ++k) {
    RobotState st;
    do {
      st.x = uniform(rng, 2, 38);
      st.y = uniform(rng, 2, 38);
    } while (collision_check(w, st.xy(), w.config.robot_radius));
    st.heading = uniform(rng, -3, 3);
    settle_on_terrain(*w.grid, st);
    const auto win = evaluate_window(w, st, {20, 20}, cfg);
    for (const auto& c : win.candidates) {
      if (!c.admissible) continue;
      ++flagged;
      EXPECT_FALSE(collides_when_simulated(w, st, c.command(), cfg));
    }
  }
  EXPECT_GT(flagged, 0);
}

TEST(DwaObjective, Properties) {
  const auto w = world_at(custom_scenario(), {.x = 20, .y = 20});
  const DwaConfig cfg;
  const Vec2 goal{30, 20};
  // Same speed, turning away from the goal costs more.
  EXPECT_LT(dwa_objective(w, w.robot, {0.5, 0.0}, goal, cfg),
            dwa_objective(w, w.robot, {0.5, 1.0}, goal, cfg));
  // Empty world: no clearance contribution.
  EXPECT_NEAR(dwa_objective(w, w.robot, {1.0, 0.0}, goal, cfg), 0.0, 1e-12);
  DwaConfig scaled = cfg;
  scaled.weights = {3.0, 1.5, 0.6};
  EXPECT_NEAR(dwa_objective(w, w.robot, {0.3, 0.5}, goal, scaled),
              3.0 * dwa_objective(w, w.robot, {0.3, 0.5}, goal, cfg), 1e-12);

  std::vector<CoverObject> wall;
  for (int i = 0; i < 9; ++i) wall.push_back(make_object(i, CoverClass::Other, 21.4, 18 + 0.5 * i, 0.3));
  const auto blocked = world_at(custom_scenario(wall), {.x = 20, .y = 20});
  EXPECT_THROW(dwa_objective(blocked, blocked.robot, {1, 0}, goal, cfg), InadmissibleCandidate);
}

TEST(SelectVelocity, EmptyWorldGoalAheadGoesStraight) {
  const auto w = world_at(custom_scenario(), {.x = 20, .y = 20, .v = 0.5});
  const auto cmd = select_velocity_dwa(w, w.robot, {32, 20}, {});
  EXPECT_EQ(cmd.omega, 0.0);
}

TEST(SelectVelocity, SymmetricObstaclesGoStraight) {
  const auto s = custom_scenario({make_object(0, CoverClass::Rock, 22, 21.5, 0.4),
                                  make_object(1, CoverClass::Rock, 22, 18.5, 0.4)});
  const auto w = world_at(s, {.x = 20, .y = 20, .v = 0.5});
  EXPECT_EQ(select_velocity_dwa(w, w.robot, {32, 20}, {}).omega, 0.0);
}

TEST(SelectVelocity, EqualsBruteForceArgmin) {
  const auto s = generate_scenario({ScenarioKind::ForestJungle, 4});
  const DwaConfig cfg;
  WorldState w = make_world(s, 5);
  Rng rng(21);
  for (int k = 0; k < 300; ++k) {
    RobotState st;
    do {
      st.x = uniform(rng, 3, 37);
      st.y = uniform(rng, 3, 37);
    } while (collision_check(w, st.xy(), w.config.robot_radius));
    st.heading = uniform(rng, -3, 3);
    st.v = uniform(rng, 0, 1);
    st.omega = uniform(rng, -1.5, 1.5);
    settle_on_terrain(*w.grid, st);
    const Vec2 goal{uniform(rng, 3, 37), uniform(rng, 3, 37)};

    const auto win = dynamic_window(st, cfg.limits, cfg.control_dt, cfg.nv, cfg.nw);
    const Candidate* best = nullptr;
    double best_cost = 0.0;
    for (const auto& c : win.candidates) {
      if (!admissible(w, st, c.command(), cfg.horizon, cfg.rollout_dt)) continue;
      const double cost = dwa_objective(w, st, c.command(), goal, cfg);
      const bool better = !best || cost < best_cost ||
                          (cost == best_cost && (std::abs(c.omega) < std::abs(best->omega) ||
                                                 (std::abs(c.omega) == std::abs(best->omega) && c.v < best->v)));
      if (better) {
        best = &c;
        best_cost = cost;
      }
    }
    if (!best) {
      EXPECT_THROW(select_velocity_dwa(w, st, goal, cfg), NoAdmissibleVelocity);
      continue;
    }
    const auto chosen = select_velocity_dwa(w, st, goal, cfg);
    EXPECT_EQ(chosen, best->command());
  }
}

TEST(SelectVelocity, NothingAdmissibleThrows) {
  VelocityWindow win = dynamic_window({}, {}, 0.25, 3, 3);
  EXPECT_THROW(select_velocity_dwa(win), NoAdmissibleVelocity);
}

TEST(EmergencyStop, StaysReachable) {
  const DynamicLimits lim;
  const auto rest = dynamic_window({.v = 0.2}, lim, 0.25, 7, 7);
  EXPECT_EQ(emergency_stop(rest), (VelocityCommand{0, 0}));
  const RobotState fast{.v = 1.0, .omega = 1.5};
  const auto win = dynamic_window(fast, lim, 0.25, 7, 7);
  const auto cmd = emergency_stop(win);
  EXPECT_TRUE(within_limits(cmd, fast, lim, 0.25));
  EXPECT_EQ(cmd.v, win.v_lo);
  EXPECT_EQ(cmd.omega, win.w_lo);
}

TEST(Project, MidpointCornerAndFallback) {
  const auto w = world_at(custom_scenario(), {.x = 20, .y = 20, .v = 0.5});
  const auto win = evaluate_window(w, w.robot, {30, 20}, {});
  const auto mid = project_to_feasible({0, 0}, win);
  EXPECT_EQ(mid, win.at(3, 3).command());
  EXPECT_EQ(project_to_feasible({1, 1}, win), win.at(6, 6).command());
  EXPECT_EQ(project_to_feasible({-1, -1}, win), win.at(0, 0).command());

  VelocityWindow none = dynamic_window({}, {}, 0.25, 7, 7);
  EXPECT_EQ(project_to_feasible({0.3, -0.7}, none), (VelocityCommand{0, 0}));
}

TEST(Project, SkipsInadmissibleCandidates) {
  auto win = dynamic_window({.v = 0.5}, {}, 0.25, 3, 3);
  for (auto& c : win.candidates) c.admissible = true;
  win.at(2, 2).admissible = false;
  const auto cmd = project_to_feasible({1, 1}, win);
  EXPECT_TRUE(cmd == win.at(1, 2).command() || cmd == win.at(2, 1).command());
}

TEST(Project, OutputAlwaysACandidateOrStop) {
  const auto s = generate_scenario({ScenarioKind::ForestJungle, 6});
  WorldState w = make_world(s, 1);
  Rng rng(9);
  for (int k = 0; k < 300; ++k) {
    RobotState st{.x = uniform(rng, 3, 37), .y = uniform(rng, 3, 37), .heading = uniform(rng, -3, 3),
                  .v = uniform(rng, 0, 1), .omega = uniform(rng, -1.5, 1.5)};
    if (collision_check(w, st.xy(), 0.4)) continue;
    settle_on_terrain(*w.grid, st);
    const auto win = evaluate_window(w, st, {20, 20}, {});
    const auto cmd = project_to_feasible({uniform(rng, -1, 1), uniform(rng, -1, 1)}, win);
    bool member = cmd == emergency_stop(win);
    for (const auto& c : win.candidates) member = member || (c.admissible && c.command() == cmd);
    EXPECT_TRUE(member);
    EXPECT_TRUE(within_limits(cmd, st, DynamicLimits{}, 0.25));
  }
}

TEST(Observation, FixedLengthAndEncoding) {
  const DwaConfig cfg;
  const auto empty = world_at(custom_scenario(), {.x = 20, .y = 20});
  std::vector<CoverObject> many;
  for (int i = 0; i < 50; ++i) many.push_back(make_object(i, CoverClass::Tree, 5 + (i % 10) * 3, 5 + (i / 10) * 3, 0.3));
  const auto busy = world_at(custom_scenario(many), {.x = 20, .y = 20});
  const auto wa = evaluate_window(empty, empty.robot, {25, 25}, cfg);
  const auto wb = evaluate_window(busy, busy.robot, {25, 25}, cfg);
  const auto oa = build_observation(std::vector{wa}, empty.robot, {25, 25}, {}, cfg);
  const auto ob = build_observation(std::vector{wb}, busy.robot, {25, 25}, {}, cfg);
  EXPECT_EQ(static_cast<int>(oa.values.size()), observation_size(cfg));
  EXPECT_EQ(oa.values.size(), ob.values.size());
  EXPECT_EQ(observation_size(cfg), cfg.n_obs * cfg.nv * cfg.nw * 2 + kObservationScalars);
  for (double v : oa.values) EXPECT_TRUE(std::isfinite(v));

  // Padding with the oldest entry is the same as repeating it explicitly.
  const auto padded = build_observation(std::vector{wa}, empty.robot, {25, 25}, {}, cfg);
  const auto repeated = build_observation(std::vector{wa, wa, wa, wa}, empty.robot, {25, 25}, {}, cfg);
  EXPECT_EQ(padded.values, repeated.values);

  // All-inadmissible window: flags 0, costs 1.
  const auto dead = dynamic_window({}, cfg.limits, cfg.control_dt, cfg.nv, cfg.nw);
  const auto od = build_observation(std::vector{dead}, empty.robot, {25, 25}, {}, cfg);
  const int block = cfg.nv * cfg.nw * 2;
  for (int i = 0; i < cfg.n_obs * block; ++i) {
    const bool is_flag = (i % block) < cfg.nv * cfg.nw;
    EXPECT_EQ(od.values[i], is_flag ? 0.0 : 1.0) << i;
  }
}
