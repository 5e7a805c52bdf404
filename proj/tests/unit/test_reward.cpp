#include <gtest/gtest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "coverfollow/errors.hpp"
#include "coverfollow/reward.hpp"
#include "coverfollow/rng.hpp"

using namespace coverfollow;

TEST(RGoal, Examples) {
  EXPECT_NEAR(r_goal(5.0, 4.2), 0.8, 1e-15);
  EXPECT_EQ(r_goal(3.0, 3.0), 0.0);
  EXPECT_NEAR(r_goal(2.0, 2.6), -0.6, 1e-15);
}

TEST(RDir, Examples) {
  EXPECT_NEAR(r_dir(0.5, 0.3), -0.2, 1e-15);
  EXPECT_EQ(r_dir(1.1, 1.1), 0.0);
  EXPECT_NEAR(r_dir(3.1, -3.1), -(2 * std::numbers::pi - 6.2), 1e-12);
  EXPECT_NEAR(r_dir(3.1, -3.1), -0.0832, 1e-4);
}

TEST(RDir, NonPositiveAndZeroOnlyForEqualHeadings) {
  Rng rng(1);
  for (int k = 0; k < 1000; ++k) {
    const double a = uniform(rng, -std::numbers::pi, std::numbers::pi);
    const double b = uniform(rng, -std::numbers::pi, std::numbers::pi);
    EXPECT_LE(r_dir(a, b), 0.0);
    EXPECT_LT(r_dir(a, b), 0.0) << a << " " << b;
  }
  EXPECT_NEAR(r_dir(0.3, 0.3 - 2 * std::numbers::pi), 0.0, 1e-12);
}

TEST(RStab, Examples) {
  EXPECT_EQ(r_stab(0, 0), 1.0);
  EXPECT_NEAR(r_stab(1, 0), 0.367879, 1e-6);
  EXPECT_NEAR(r_stab(0.6, 0.8), std::exp(-1.0), 1e-15);
  Rng rng(2);
  for (int k = 0; k < 1000; ++k) {
    const double v = r_stab(uniform(rng, -3, 3), uniform(rng, -3, 3));
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(RElev, Examples) {
  StepContext ctx;
  ctx.h_cur = 1.0;
  ctx.elevation_history = {{0, 0, 0.0}, {0, 0, 0.5}};
  RewardWeights w;
  EXPECT_DOUBLE_EQ(r_elev(ctx, w), -1.5);
  w.w_elev = 1.0;
  EXPECT_DOUBLE_EQ(r_elev(ctx, w), 1.5);
  ctx.elevation_history = {{0, 0, 1.0}, {1, 1, 1.0}};
  EXPECT_EQ(r_elev(ctx, w), 0.0);
  ctx.elevation_history.clear();
  EXPECT_THROW(r_elev(ctx, w), EmptyHistory);
}

TEST(RElev, UsesOnlyNewestEntries) {
  StepContext ctx;
  ctx.h_cur = 0.0;
  for (int i = 0; i < 8; ++i) ctx.elevation_history.push_back({0, 0, static_cast<double>(i)});
  RewardWeights w;
  w.n_history = 3;
  EXPECT_DOUBLE_EQ(r_elev(ctx, w), -(5.0 + 6.0 + 7.0));
}

TEST(RCover, ExamplesAndBreakpoints) {
  EXPECT_EQ(r_cover(2.0, 0.67), 0.0);
  EXPECT_NEAR(r_cover(0.67, 0.67), 0.335, 1e-15);
  EXPECT_EQ(r_cover(0.2, 0.67), -1000.0);
  EXPECT_EQ(r_cover(kNoCover, 0.67), 0.0);
  const double w = 0.67;
  EXPECT_EQ(r_cover(0.5 * w, w), 0.0);
  EXPECT_EQ(r_cover(0.5 * w - 1e-12, w), -1000.0);
  EXPECT_GT(r_cover(0.5 * w + 1e-12, w), 0.0);
  EXPECT_EQ(r_cover(1.5 * w, w), 1.5 * w - 0.5 * w);
  EXPECT_EQ(r_cover(1.5 * w + 1e-12, w), 0.0);
  EXPECT_EQ(kCoverCollisionPenalty, -1000.0);
}

TEST(TotalReward, Examples) {
  StepContext ctx;
  ctx.d_prev = ctx.d_cur = 4.0;
  ctx.elevation_history = {{0, 0, 0.0}};
  const RewardBreakdown flat = total_reward(ctx, {});
  EXPECT_EQ(flat.total, 1.0);

  // Fixture built from the component examples.
  StepContext f;
  f.d_prev = 5.0;
  f.d_cur = 4.2;
  f.theta_cur = 0.5;
  f.theta_prev = 0.3;
  f.roll = 1.0;
  f.h_cur = 1.0;
  f.elevation_history = {{0, 0, 0.0}, {0, 0, 0.5}};
  f.d_cover = 0.67;
  const RewardBreakdown b = total_reward(f, {});
  EXPECT_NEAR(b.total, -0.197121, 1e-6);
  EXPECT_EQ(b.total, b.r_goal + b.r_dir + b.r_stab + b.r_elev + b.r_cover);

  RewardWeights twice;
  twice.component_scales = {2, 2, 2, 2, 2};
  EXPECT_NEAR(total_reward(f, twice).total, 2 * b.total, 1e-12);
  EXPECT_THROW(total_reward(StepContext{}, {}), EmptyHistory);
}

TEST(TotalReward, MatchesOracleOnRandomContexts) {
  Rng rng(1234);
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
    w.w_elev = uniform(rng, -2, 2);
    w.n_history = 1 + static_cast<int>(rng() % 6);
    w.w_min = uniform(rng, 0.3, 1.0);
    const auto b = total_reward(ctx, w);
    const double og = oracle::r_goal(ctx.d_prev, ctx.d_cur);
    const double od = oracle::r_dir(ctx.theta_cur, ctx.theta_prev);
    const double os = oracle::r_stab(ctx.roll, ctx.pitch);
    const double oe = oracle::r_elev(hist, ctx.h_cur, w.w_elev, w.n_history);
    const double oc = oracle::r_cover(ctx.d_cover, w.w_min);
    EXPECT_NEAR(b.r_goal, og, 1e-9);
    EXPECT_NEAR(b.r_dir, od, 1e-9);
    EXPECT_NEAR(b.r_stab, os, 1e-9);
    EXPECT_NEAR(b.r_elev, oe, 1e-9);
    EXPECT_NEAR(b.r_cover, oc, 1e-9);
    EXPECT_NEAR(b.total, og + od + os + oe + oc, 1e-9);
  }
}

TEST(NormalizeEpisode, Rules) {
  const std::vector<double> r = {1.0, -2.0, 4.0};
  EXPECT_EQ(normalize_episode(r, 2.0, 0.5, {}), r);
  const NormalizationConfig on{true, 0.0};
  EXPECT_EQ(normalize_episode(r, 2.0, 0.5, on), (std::vector<double>{0.5, -1.0, 2.0}));
  EXPECT_EQ(normalize_episode(std::vector<double>{0.0, 0.0}, 0.3, 0.0, on),
            (std::vector<double>{0.0, 0.0}));
  // Small or negative maxima never amplify rewards.
  EXPECT_EQ(normalize_episode(r, 0.2, 0.0, on), r);
  const NormalizationConfig vis{true, 2.0};
  EXPECT_EQ(normalize_episode(r, 1.0, 0.25, vis), (std::vector<double>{1.0, -2.0, 3.5}));
  EXPECT_THROW(normalize_episode(r, kNoCover, 0.0, on), DegenerateNormalizer);
  EXPECT_THROW(normalize_episode(r, NAN, 0.0, on), DegenerateNormalizer);
}
