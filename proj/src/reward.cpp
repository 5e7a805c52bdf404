#include "coverfollow/reward.hpp"

#include <algorithm>
#include <cmath>

#include "coverfollow/errors.hpp"
#include "coverfollow/geometry.hpp"

namespace coverfollow {

double r_goal(double d_prev, double d_cur) { return d_prev - d_cur; }

double r_dir(double theta_cur, double theta_prev) {
  return -std::abs(wrap_angle(theta_cur - theta_prev));
}

double r_stab(double roll, double pitch) { return std::exp(-(roll * roll + pitch * pitch)); }

double r_elev(const StepContext& ctx, const RewardWeights& weights) {
  const auto& hist = ctx.elevation_history;
  if (hist.empty()) throw EmptyHistory("r_elev needs at least one previous position");
  const std::size_t n = std::min(hist.size(), static_cast<std::size_t>(weights.n_history));
  double sum = 0.0;
  for (std::size_t k = hist.size() - n; k < hist.size(); ++k)
    sum += weights.w_elev * std::abs(ctx.h_cur - hist[k].h);
  return sum;
}

double r_cover(double d_cover, double w_min) {
  if (d_cover > 1.5 * w_min) return 0.0;
  if (d_cover >= 0.5 * w_min) return d_cover - 0.5 * w_min;
  return kCoverCollisionPenalty;
}

RewardBreakdown total_reward(const StepContext& ctx, const RewardWeights& weights) {
  RewardBreakdown b;
  b.r_goal = r_goal(ctx.d_prev, ctx.d_cur);
  b.r_dir = r_dir(ctx.theta_cur, ctx.theta_prev);
  b.r_stab = r_stab(ctx.roll, ctx.pitch);
  b.r_elev = r_elev(ctx, weights);
  b.r_cover = r_cover(ctx.d_cover, weights.w_min);
  const auto& s = weights.component_scales;
  b.total = s[kGoal] * b.r_goal + s[kDir] * b.r_dir + s[kStab] * b.r_stab +
            s[kElev] * b.r_elev + s[kCover] * b.r_cover;
  return b;
}

std::vector<double> normalize_episode(std::span<const double> step_rewards, double max_cover,
                                      double min_visibility, const NormalizationConfig& cfg) {
  std::vector<double> out(step_rewards.begin(), step_rewards.end());
  if (!cfg.enabled) return out;
  const double denom = std::max(1.0, max_cover);
  if (!std::isfinite(max_cover) || denom == 0.0)
    throw DegenerateNormalizer("episode normalizer is zero or not finite");
  for (double& r : out) r /= denom;
  if (!out.empty()) out.back() += -cfg.lambda * min_visibility;
  return out;
}

}  // namespace coverfollow
