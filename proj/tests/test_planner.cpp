#include <gtest/gtest.h>

#include <cmath>

#include "modeq/imperfect.hpp"
#include "modeq/model.hpp"
#include "modeq/perfect.hpp"
#include "modeq/planner.hpp"
#include "oracles.hpp"

using namespace modeq;

namespace {

ModelParams params(double alpha, double v, double c = 0.3, double k = 0.5) {
  ModelParams p;
  p.alpha = alpha;
  p.v = v;
  p.c = c;
  p.k = k;
  return p;
}

}  // namespace

TEST(Welfare, UnmoderatedValue) {
  const auto p = params(0.2, 0.25);
  EXPECT_NEAR(welfare_unmoderated(p), 0.096272, 1e-6);
  const double x = marginal_user_ad(1.0, p);
  const double q = oracle::simpson([&](double t) { return 0.2 * t + 0.25 - (1.0 - t * t) / 2.0; }, x, 1.0, 10000);
  EXPECT_NEAR(welfare_unmoderated(p), q, 1e-9);
}

TEST(Welfare, GainAtZeroSlope) {
  EXPECT_NEAR(welfare_gain(0.0, 0.25), 0.048816, 1e-6);
  const auto p = params(0.0, 0.25);
  EXPECT_NEAR(welfare_perfect(0.5, p) - welfare_perfect(1.0, p), 0.048816, 1e-6);
}

TEST(Welfare, StationaryAtSqrtV) {
  const auto p = params(0.0, 0.25);
  const double h = 1e-6;
  EXPECT_NEAR((welfare_perfect(0.5 + h, p) - welfare_perfect(0.5 - h, p)) / (2 * h), 0.0, 1e-8);
}

TEST(Planner, InteriorPolicy) {
  EXPECT_NEAR(solve_planner_perfect(params(0.0, 0.25)).policy_y, 0.5, 1e-12);
  ASSERT_GT(welfare_gain(0.05, 0.25), 0.0);
  const auto w = solve_planner_perfect(params(0.05, 0.25));
  EXPECT_NEAR(w.policy_y, 0.525625, 1e-6);
  EXPECT_LT(solve_sub_perfect(params(0.05, 0.25)).policy_y, w.policy_y);
  EXPECT_LT(w.policy_y, solve_ad_perfect(params(0.05, 0.25)).policy_y);
}

TEST(Planner, NoModerationAboveThreshold) {
  const double aP = alpha_planner_threshold(0.25);
  EXPECT_LT(aP, std::sqrt(0.25 / 2.0));
  const auto w = solve_planner_perfect(params(aP + 0.01, 0.25, 0.4));
  EXPECT_EQ(w.policy_y, 1.0);
}

TEST(Planner, GainDecreasingInSlope) {
  double prev = 1e9;
  for (double a = 0.0; a < std::sqrt(0.25 / 2.0); a += 0.01) {
    const double g = welfare_gain(a, 0.25);
    EXPECT_LT(g, prev);
    prev = g;
  }
}

TEST(Contribution, ZeroAtOptimum) {
  for (double a : {0.0, 0.02, 0.05}) {
    const auto p = params(a, 0.25);
    const double y = planner_interior_policy(a, 0.25);
    EXPECT_NEAR(net_utility_contribution(y, y, p), 0.0, 1e-10);
    EXPECT_GT(net_utility_contribution(y - 0.05, y - 0.05, p), 0.0);
  }
  EXPECT_NEAR(net_utility_contribution(0.6, 0.6, params(0.0, 0.25)), 0.25 - 0.36, 1e-12);
}

TEST(WelfareImperfect, PerfectReduction) {
  const auto p = params(0.2, 0.25, 0.3, 0.5);
  for (double y : {0.3, 0.6, 0.8, 1.0}) EXPECT_NEAR(welfare_imperfect(y, p), welfare_perfect(y, p), 1e-12);
  const auto w = solve_planner_imperfect_at(p);
  EXPECT_NEAR(w.welfare, solve_planner_perfect(p).welfare, 1e-12);
}

TEST(WelfareImperfect, MatchesQuadratureOverFixedPoint) {
  const auto p = params(0.2, 0.25, 0.3, 0.0);
  const double y = 0.6;
  const UserBase b = fixed_point_participation(y, 0.0, p, 100000);
  double q = 0.0;
  for (const auto& s : b.segments()) {
    const double mid = std::clamp(y, s.lo, s.hi);
    auto u = [&](double x) { return utility(x, y, 0.0, b, p); };
    if (mid > s.lo) q += oracle::simpson(u, s.lo, mid, 10000);
    if (s.hi > mid) q += oracle::simpson(u, std::nextafter(mid, 2.0), s.hi, 10000);
  }
  EXPECT_NEAR(welfare_imperfect(y, p), q, 1e-4);
  EXPECT_NEAR(total_utility(y, 0.0, b, p), q, 1e-9);
}

TEST(WelfareImperfect, NondecreasingInAccuracy) {
  const auto rows = solve_planner_imperfect(params(0.2, 0.25, 0.3), k_grid());
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GE(rows[i].welfare, rows[i - 1].welfare - 1e-6) << rows[i].k;
}
