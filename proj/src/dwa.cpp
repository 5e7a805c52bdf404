#include "coverfollow/dwa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coverfollow/errors.hpp"

namespace coverfollow {
namespace {

struct Bounds {
  double lo;
  double hi;
};

// Interval reachable from `now`, nudged so that |edge - now| <= max_delta holds
// exactly in floating point.
Bounds reachable(double now, double max_delta, double abs_lo, double abs_hi) {
  double lo = std::max(abs_lo, now - max_delta);
  double hi = std::min(abs_hi, now + max_delta);
  while (std::abs(lo - now) > max_delta) lo = std::nextafter(lo, hi);
  while (std::abs(hi - now) > max_delta) hi = std::nextafter(hi, lo);
  if (lo > hi) hi = lo;
  return {lo, hi};
}

double grid_value(Bounds b, int i, int n) {
  if (i == n - 1) return b.hi;
  return std::clamp(b.lo + i * (b.hi - b.lo) / (n - 1), b.lo, b.hi);
}

struct Rollout {
  bool collision_free = true;
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
  double min_clearance = std::numeric_limits<double>::infinity();
  bool reaches_goal = false;  // passes within the goal tolerance at some sample
};

double clearance(const WorldState& world, double x, double y) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& obj : *world.objects) {
    const double d = std::hypot(obj.position.x - x, obj.position.y - y) - obj.footprint_radius -
                     world.config.robot_radius;
    best = std::min(best, d);
  }
  return best;
}

Rollout roll_out(const WorldState& world, const RobotState& state, VelocityCommand cand,
                 double horizon, double dt, const Vec2* goal = nullptr) {
  if (!(dt > 0.0) || horizon < dt) throw std::invalid_argument("rollout needs horizon >= dt > 0");
  Rollout r;
  r.x = state.x;
  r.y = state.y;
  r.heading = state.heading;
  r.min_clearance = clearance(world, r.x, r.y);
  const int steps = std::max(1, static_cast<int>(std::lround(horizon / dt)));
  for (int k = 0; k < steps; ++k) {
    integrate_unicycle(r.x, r.y, r.heading, cand.v, cand.omega, dt);
    if (collision_check(world, {r.x, r.y}, world.config.robot_radius)) {
      r.collision_free = false;
      return r;
    }
    r.min_clearance = std::min(r.min_clearance, clearance(world, r.x, r.y));
    if (goal && std::hypot(goal->x - r.x, goal->y - r.y) <= world.config.goal_tolerance)
      r.reaches_goal = true;
  }
  return r;
}

double objective(const Rollout& r, VelocityCommand cand, Vec2 goal, const DwaConfig& cfg) {
  const double dx = goal.x - r.x;
  const double dy = goal.y - r.y;
  // A rollout that passes through the goal would end the episode there, so
  // where it points afterwards does not matter.
  const double heading_error = (r.reaches_goal || (dx == 0.0 && dy == 0.0))
                                   ? 0.0
                                   : std::abs(wrap_angle(std::atan2(dy, dx) - r.heading));
  constexpr double kMinClearance = 1e-3;
  const double inv_clearance = 1.0 / std::max(r.min_clearance, kMinClearance);
  const auto& w = cfg.weights;
  return w.heading * heading_error + w.clearance * inv_clearance +
         w.velocity * (cfg.limits.v_max - cand.v);
}

bool better(const Candidate& a, const Candidate& b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  if (std::abs(a.omega) != std::abs(b.omega)) return std::abs(a.omega) < std::abs(b.omega);
  return a.v < b.v;
}

}  // namespace

bool VelocityWindow::any_admissible() const {
  return std::any_of(candidates.begin(), candidates.end(),
                     [](const Candidate& c) { return c.admissible; });
}

bool within_limits(VelocityCommand cmd, const RobotState& now, const DynamicLimits& limits,
                   double dt) {
  return std::abs(cmd.v - now.v) <= limits.accel_v * dt &&
         std::abs(cmd.omega - now.omega) <= limits.accel_omega * dt && cmd.v >= limits.v_min &&
         cmd.v <= limits.v_max && cmd.omega >= -limits.omega_max && cmd.omega <= limits.omega_max;
}

VelocityWindow dynamic_window(const RobotState& state, const DynamicLimits& limits, double dt,
                              int nv, int nw) {
  if (nv < 2 || nw < 2) throw std::invalid_argument("dynamic window needs nv, nw >= 2");
  const Bounds vb = reachable(state.v, limits.accel_v * dt, limits.v_min, limits.v_max);
  const Bounds wb =
      reachable(state.omega, limits.accel_omega * dt, -limits.omega_max, limits.omega_max);
  VelocityWindow win;
  win.nv = nv;
  win.nw = nw;
  win.v_lo = vb.lo;
  win.v_hi = vb.hi;
  win.w_lo = wb.lo;
  win.w_hi = wb.hi;
  win.candidates.reserve(static_cast<std::size_t>(nv * nw));
  for (int iv = 0; iv < nv; ++iv) {
    for (int iw = 0; iw < nw; ++iw) {
      Candidate c;
      c.v = grid_value(vb, iv, nv);
      c.omega = grid_value(wb, iw, nw);
      win.candidates.push_back(c);
    }
  }
  return win;
}

bool admissible(const WorldState& world, const RobotState& state, VelocityCommand cand,
                double horizon, double dt) {
  return roll_out(world, state, cand, horizon, dt).collision_free;
}

double dwa_objective(const WorldState& world, const RobotState& state, VelocityCommand cand,
                     Vec2 goal, const DwaConfig& cfg) {
  const Rollout r = roll_out(world, state, cand, cfg.horizon, cfg.rollout_dt, &goal);
  if (!r.collision_free) throw InadmissibleCandidate("candidate collides within the horizon");
  return objective(r, cand, goal, cfg);
}

VelocityWindow evaluate_window(const WorldState& world, const RobotState& state, Vec2 goal,
                               const DwaConfig& cfg) {
  VelocityWindow win = dynamic_window(state, cfg.limits, cfg.control_dt, cfg.nv, cfg.nw);
  for (auto& c : win.candidates) {
    const Rollout r = roll_out(world, state, c.command(), cfg.horizon, cfg.rollout_dt, &goal);
    c.admissible = r.collision_free;
    if (c.admissible) c.cost = objective(r, c.command(), goal, cfg);
  }
  return win;
}

VelocityCommand select_velocity_dwa(const VelocityWindow& window) {
  const Candidate* best = nullptr;
  for (const auto& c : window.candidates) {
    if (!c.admissible) continue;
    if (best == nullptr || better(c, *best)) best = &c;
  }
  if (best == nullptr) throw NoAdmissibleVelocity("no admissible velocity in the dynamic window");
  return best->command();
}

VelocityCommand select_velocity_dwa(const WorldState& world, const RobotState& state, Vec2 goal,
                                    const DwaConfig& cfg) {
  return select_velocity_dwa(evaluate_window(world, state, goal, cfg));
}

namespace {

struct GridPoint {
  double u;  // normalized linear coordinate in [0, 1]
  double w;  // normalized angular coordinate in [0, 1]
};

double normalized(double value, double lo, double hi) {
  return hi > lo ? (value - lo) / (hi - lo) : 0.0;
}

template <typename Pred>
const Candidate* nearest(const VelocityWindow& window, GridPoint target, Pred accept) {
  const Candidate* best = nullptr;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (int iv = 0; iv < window.nv; ++iv) {
    for (int iw = 0; iw < window.nw; ++iw) {
      const Candidate& c = window.at(iv, iw);
      if (!accept(c)) continue;
      const double du = static_cast<double>(iv) / (window.nv - 1) - target.u;
      const double dw = static_cast<double>(iw) / (window.nw - 1) - target.w;
      const double d2 = du * du + dw * dw;
      if (d2 < best_d2) {
        best_d2 = d2;
        best = &c;
      }
    }
  }
  return best;
}

}  // namespace

VelocityCommand emergency_stop(const VelocityWindow& window) {
  if (window.contains({0.0, 0.0})) return {0.0, 0.0};
  const GridPoint target{
      normalized(std::clamp(0.0, window.v_lo, window.v_hi), window.v_lo, window.v_hi),
      normalized(std::clamp(0.0, window.w_lo, window.w_hi), window.w_lo, window.w_hi)};
  return nearest(window, target, [](const Candidate&) { return true; })->command();
}

VelocityCommand project_to_feasible(std::array<double, 2> raw, const VelocityWindow& window) {
  if (window.candidates.empty()) throw std::invalid_argument("empty velocity window");
  const GridPoint target{0.5 * (std::clamp(raw[0], -1.0, 1.0) + 1.0),
                         0.5 * (std::clamp(raw[1], -1.0, 1.0) + 1.0)};
  const Candidate* c = nearest(window, target, [](const Candidate& x) { return x.admissible; });
  if (c == nullptr) return emergency_stop(window);
  return c->command();
}

int observation_size(const DwaConfig& cfg) {
  return cfg.n_obs * cfg.nv * cfg.nw * 2 + kObservationScalars;
}

ObservationMatrix build_observation(std::span<const VelocityWindow> history,
                                    const RobotState& state, Vec2 goal,
                                    const CoverVerdict& cover, const DwaConfig& cfg) {
  if (history.empty()) throw std::invalid_argument("observation needs at least one window");
  const std::size_t cells = static_cast<std::size_t>(cfg.nv * cfg.nw);
  ObservationMatrix obs;
  obs.values.reserve(static_cast<std::size_t>(observation_size(cfg)));

  const auto n_obs = static_cast<std::size_t>(cfg.n_obs);
  const std::size_t used = std::min(history.size(), n_obs);
  const auto recent = history.subspan(history.size() - used);
  for (std::size_t slot = 0; slot < n_obs; ++slot) {
    const std::size_t pad = n_obs - used;
    const VelocityWindow& win = recent[slot < pad ? 0 : slot - pad];
    if (win.candidates.size() != cells)
      throw std::invalid_argument("window shape does not match the configuration");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& c : win.candidates) {
      if (!c.admissible) continue;
      lo = std::min(lo, c.cost);
      hi = std::max(hi, c.cost);
    }
    for (const auto& c : win.candidates) obs.values.push_back(c.admissible ? 1.0 : 0.0);
    for (const auto& c : win.candidates) {
      if (!c.admissible) {
        obs.values.push_back(1.0);
      } else {
        obs.values.push_back(hi > lo ? (c.cost - lo) / (hi - lo) : 0.0);
      }
    }
  }

  const double dx = goal.x - state.x;
  const double dy = goal.y - state.y;
  const double bearing = wrap_angle(std::atan2(dy, dx) - state.heading);
  obs.values.push_back(std::hypot(dx, dy) / kDefaultGoalRadius);
  obs.values.push_back(std::sin(bearing));
  obs.values.push_back(std::cos(bearing));
  obs.values.push_back(state.roll);
  obs.values.push_back(state.pitch);
  const bool seen = cover.has_cover_object();
  obs.values.push_back(
      seen ? std::min(cover.cover_distance, kCoverDistanceThreshold) / kCoverDistanceThreshold
           : 1.0);
  obs.values.push_back(seen ? std::sin(cover.cover_bearing) : 0.0);
  obs.values.push_back(seen ? std::cos(cover.cover_bearing) : 0.0);
  obs.values.push_back(cfg.limits.v_max > 0.0 ? state.v / cfg.limits.v_max : 0.0);
  obs.values.push_back(cfg.limits.omega_max > 0.0 ? state.omega / cfg.limits.omega_max : 0.0);
  obs.values.push_back(cover.is_cover ? 1.0 : 0.0);
  return obs;
}

}  // namespace coverfollow
