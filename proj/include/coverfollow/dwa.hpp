#pragma once

#include <array>
#include <limits>
#include <span>
#include <vector>

#include "coverfollow/perception.hpp"
#include "coverfollow/world.hpp"

namespace coverfollow {

struct DynamicLimits {
  double v_max = 1.0;        ///< m/s
  double v_min = 0.0;        ///< m/s
  double omega_max = 1.5;    ///< rad/s, symmetric
  double accel_v = 3.0;      ///< m/s^2
  double accel_omega = 6.0;  ///< rad/s^2
};

struct Candidate {
  double v = 0.0;
  double omega = 0.0;
  bool admissible = false;
  double cost = std::numeric_limits<double>::infinity();

  VelocityCommand command() const { return {v, omega}; }
};

/// Uniform nv x nw grid of reachable velocities; candidates are stored with
/// the linear velocity index major: index = iv * nw + iw.
struct VelocityWindow {
  int nv = 0;
  int nw = 0;
  double v_lo = 0.0;
  double v_hi = 0.0;
  double w_lo = 0.0;
  double w_hi = 0.0;
  std::vector<Candidate> candidates;

  const Candidate& at(int iv, int iw) const { return candidates[iv * nw + iw]; }
  Candidate& at(int iv, int iw) { return candidates[iv * nw + iw]; }
  bool any_admissible() const;
  bool contains(VelocityCommand cmd) const {
    return cmd.v >= v_lo && cmd.v <= v_hi && cmd.omega >= w_lo && cmd.omega <= w_hi;
  }
};

struct DwaWeights {
  double heading = 1.0;    ///< alpha
  double clearance = 0.5;  ///< beta
  double velocity = 0.2;   ///< gamma_w
};

struct DwaConfig {
  DynamicLimits limits;
  int nv = 7;
  int nw = 7;
  double control_dt = 0.25;  ///< seconds per control interval
  double horizon = 1.0;      ///< rollout lookahead, seconds
  double rollout_dt = 0.1;
  DwaWeights weights;
  int n_obs = 4;  ///< past windows in an observation
};

/// True iff cmd is reachable from `now` within one interval dt and inside the
/// absolute limits.
bool within_limits(VelocityCommand cmd, const RobotState& now, const DynamicLimits& limits,
                   double dt);

/// Reachable grid [max(v_min, v - a_v dt), min(v_max, v + a_v dt)] x
/// [max(-w_max, w - a_w dt), min(w_max, w + a_w dt)]. Candidates start
/// inadmissible with infinite cost. nv, nw >= 2.
VelocityWindow dynamic_window(const RobotState& state, const DynamicLimits& limits, double dt,
                              int nv, int nw);

/// Constant-velocity rollout over the horizon never triggers collision_check.
bool admissible(const WorldState& world, const RobotState& state, VelocityCommand cand,
                double horizon, double dt);

/// alpha * heading error after the rollout (0 if the rollout passes the goal)
/// + beta / clearance + gamma_w * (v_max - v).
/// Throws InadmissibleCandidate.
double dwa_objective(const WorldState& world, const RobotState& state, VelocityCommand cand,
                     Vec2 goal, const DwaConfig& cfg);

/// dynamic_window with admissibility flags and objective costs filled in.
VelocityWindow evaluate_window(const WorldState& world, const RobotState& state, Vec2 goal,
                               const DwaConfig& cfg);

/// Minimal-cost admissible candidate; ties go to lower |omega|, then lower v.
/// Throws NoAdmissibleVelocity.
VelocityCommand select_velocity_dwa(const WorldState& world, const RobotState& state, Vec2 goal,
                                    const DwaConfig& cfg);
VelocityCommand select_velocity_dwa(const VelocityWindow& window);

/// Hardest reachable braking: (0, 0) when the window bounds contain it, else
/// the grid candidate nearest to it in normalized window coordinates.
VelocityCommand emergency_stop(const VelocityWindow& window);

/// Raw action in [-1, 1]^2 mapped affinely onto the window bounds, then
/// snapped to the nearest admissible candidate in normalized coordinates.
/// Falls back to emergency_stop when nothing is admissible.
VelocityCommand project_to_feasible(std::array<double, 2> raw, const VelocityWindow& window);

struct ObservationMatrix {
  std::vector<double> values;
};

inline constexpr int kObservationScalars = 11;
int observation_size(const DwaConfig& cfg);

/// Fixed-length observation: for each of the last n_obs windows (oldest
/// first, padded with copies of the oldest) the 0/1 admissibility flags and
/// the min-max scaled costs (inadmissible encoded as 1), followed by goal
/// distance and bearing, roll, pitch, nearest-cover distance and bearing, and
/// the current velocities.
ObservationMatrix build_observation(std::span<const VelocityWindow> history,
                                    const RobotState& state, Vec2 goal,
                                    const CoverVerdict& cover, const DwaConfig& cfg);

}  // namespace coverfollow
