#include <gtest/gtest.h>

#include <cmath>

#include "modeq/errors.hpp"
#include "modeq/imperfect.hpp"
#include "modeq/model.hpp"
#include "oracles.hpp"

using namespace modeq;

namespace {

ModelParams params(double alpha, double v, double c, double k) {
  ModelParams p;
  p.alpha = alpha;
  p.v = v;
  p.c = c;
  p.k = k;
  return p;
}

}  // namespace

TEST(Validate, RejectsBadParameters) {
  EXPECT_NO_THROW(validate(params(0.2, 0.25, 0.3, 0.5)));
  EXPECT_THROW(validate(params(0.2, 0.6, 0.7, 0.5)), Error);
  EXPECT_THROW(validate(params(0.2, 0.25, 0.2, 0.5)), Error);
  EXPECT_THROW(validate(params(0.2, 0.25, 0.8, 0.5)), Error);
  EXPECT_THROW(validate(params(0.2, 0.25, 0.3, 0.6)), Error);
  auto p = params(0.2, 0.25, 0.3, 0.5);
  p.zeta = 0.0;
  EXPECT_THROW(validate(p), Error);
}

TEST(Utility, FullBaseAtZero) {
  const auto p = params(0.0, 0.25, 0.3, 0.5);
  EXPECT_NEAR(utility(0.0, 1.0, 0.0, UserBase({{0.0, 1.0}}), p), -0.25, 1e-15);
}

TEST(Utility, ModeratedOutUserGetsVMinusC) {
  const auto p = params(0.2, 0.25, 0.3, 0.5);
  const UserBase base({{0.0, 1.0}});
  EXPECT_NEAR(utility(0.8, 0.6, 0.0, base, p), 0.25 - 0.3, 1e-15);
  EXPECT_NEAR(utility(0.61, 0.6, 0.0, UserBase({{0.1, 0.5}}), p), -0.05, 1e-15);
}

TEST(Utility, BelowMarginalUserIsNegative) {
  const auto p = params(0.2, 0.25, 0.3, 0.5);
  const UserBase base({{0.534847, 1.0}});
  EXPECT_LT(utility(0.5, 1.0, 0.0, base, p), 0.0);
  EXPECT_NEAR(utility(0.534847, 1.0, 0.0, base, p), 0.0, 1e-6);
}

TEST(Utility, PerfectAccuracyCollapsesToBaseModel) {
  const auto p = params(0.3, 0.2, 0.35, 0.5);
  const UserBase base({{0.1, 0.4}, {0.7, 0.9}});
  for (double x : {0.0, 0.15, 0.35, 0.5, 0.75, 0.95}) {
    const double y = 0.6;
    double above = 0.0;
    for (const auto& s : base.segments())
      if (s.hi > x && s.hi <= y) above += (s.hi * s.hi - std::max(s.lo, x) * std::max(s.lo, x)) / 2.0;
    const double expected = x <= y ? p.alpha * x + p.v - above : p.v - p.c;
    EXPECT_NEAR(utility(x, y, 0.0, base, p), expected, 1e-12) << x;
  }
}

TEST(MarginalUser, AdvertisingClosedForm) {
  const auto p = params(0.2, 0.25, 0.3, 0.5);
  EXPECT_NEAR(marginal_user_ad(std::sqrt(0.5), p), 0.0, 1e-12);
  EXPECT_NEAR(marginal_user_ad(1.0, p), 0.534847, 1e-6);
  EXPECT_EQ(marginal_user_ad(0.3, p), 0.0);
}

TEST(MarginalUser, SubscriptionClosedForm) {
  const auto p = params(0.0, 0.25, 0.3, 0.5);
  for (double y : {0.2, 0.7, 0.9, 1.0}) EXPECT_EQ(marginal_user_sub(y, 0.0, p), marginal_user_ad(y, p));
  EXPECT_NEAR(marginal_user_sub(1.0, 0.120127, p), 0.860380, 1e-6);
  EXPECT_NEAR(marginal_user_sub(std::sqrt(2.0 * (0.25 - 0.1)), 0.1, p), 0.0, 1e-12);
  // Price above v: the threshold is zero and the root may pass y.
  EXPECT_LE(marginal_user_sub(0.3, 0.4, p), 0.3);
}

TEST(FixedPoint, MatchesAdvertisingMarginalUser) {
  const auto p = params(0.2, 0.25, 0.3, 0.5);
  const UserBase b = fixed_point_participation(1.0, 0.0, p, 100000);
  ASSERT_EQ(b.segments().size(), 1u);
  EXPECT_NEAR(b.segments()[0].lo, 0.534847, 2e-5);
  EXPECT_NEAR(b.segments()[0].hi, 1.0, 1e-12);
}

TEST(FixedPoint, NoContentAllowed) {
  const auto p = params(0.2, 0.25, 0.3, 0.5);
  const UserBase b = fixed_point_participation(0.0, 0.0, p, 1000);
  EXPECT_LE(b.measure(), 1e-3);
}

TEST(FixedPoint, TwoSegmentsUnderImperfectTechnology) {
  const auto p = params(0.2, 0.25, 0.3, 0.2);
  const UserBase b = fixed_point_participation(0.5, 0.0, p, 100000);
  ASSERT_EQ(b.segments().size(), 2u);
  EXPECT_NEAR(b.segments()[1].lo, 0.679393, 2e-5);
  EXPECT_NEAR(b.segments()[1].lo, x2k_ad(p).x2, 2e-5);
  EXPECT_NEAR(b.segments()[0].lo, x1k_ad(0.5, p), 2e-5);
  EXPECT_NEAR(b.segments()[0].hi, 0.5, 2e-5);
}

TEST(FixedPoint, RejectsTinyGrids) {
  EXPECT_THROW(fixed_point_participation(1.0, 0.0, params(0.2, 0.25, 0.3, 0.5), 10), Error);
}

TEST(FixedPoint, UtilityIncreasingOnEachInterval) {
  const auto p = params(0.2, 0.25, 0.3, 0.2);
  const UserBase b = fixed_point_participation(0.5, 0.0, p, 2000);
  for (const auto& s : b.segments()) {
    double prev = -1e9;
    for (int i = 0; i <= 20; ++i) {
      const double x = i == 20 ? s.hi : s.lo + (s.hi - s.lo) * i / 20.0;
      const double u = utility(x, 0.5, 0.0, b, p);
      EXPECT_GE(u, prev - 1e-12);
      prev = u;
    }
  }
}

TEST(AvgExtremeness, ClosedFormCases) {
  EXPECT_NEAR(avg_extremeness(UserBase({{0.0, 0.70711}}), 0.70711, 0.5), 0.353555, 1e-6);
  EXPECT_NEAR(avg_extremeness(UserBase({{0.534847, 1.0}}), 1.0, 0.5), 0.7674235, 1e-7);
  EXPECT_THROW(avg_extremeness(UserBase(), 0.5, 0.3), Error);
}

TEST(AvgExtremeness, MatchesQuadratureOnTwoSegments) {
  const double k = 0.2, y = 0.5;
  const UserBase b({{0.1, 0.5}, {0.679393, 1.0}});
  auto s = [&](double x) { return x <= y ? 0.5 + k : 0.5 - k; };
  double num = 0.0, den = 0.0;
  for (const auto& seg : b.segments()) {
    num += oracle::simpson([&](double x) { return x * s(x); }, seg.lo, seg.hi, 10000);
    den += oracle::simpson(s, seg.lo, seg.hi, 10000);
  }
  EXPECT_NEAR(avg_extremeness(b, y, k), num / den, 1e-9);
}

TEST(PrunedMasses, Weights) {
  const UserBase b({{0.1, 0.5}, {0.7, 1.0}});
  const auto perfect = pruned_masses(b, 0.5, 0.5);
  EXPECT_EQ(perfect.m2, 0.0);
  EXPECT_NEAR(perfect.m1, 0.3, 1e-15);
  const auto coin = pruned_masses(b, 0.5, 0.0);
  EXPECT_NEAR(coin.m1, 0.5 * 0.3, 1e-15);
  EXPECT_NEAR(coin.m2, 0.5 * 0.4, 1e-15);
}

TEST(TotalUtility, MatchesQuadrature) {
  const auto p = params(0.2, 0.25, 0.3, 0.2);
  const UserBase b({{0.1, 0.5}, {0.679393, 1.0}});
  double q = 0.0;
  for (const auto& s : b.segments()) {
    const double mid = std::clamp(0.5, s.lo, s.hi);
    q += oracle::simpson([&](double x) { return utility(x, 0.5, 0.0, b, p); }, s.lo, mid, 2000);
    if (mid < s.hi)
      q += oracle::simpson([&](double x) { return utility(x, 0.5, 0.0, b, p); }, mid + 1e-15, s.hi, 2000);
  }
  EXPECT_NEAR(total_utility(0.5, 0.0, b, p), q, 1e-9);
}

TEST(ImperfectMarginals, MonotoneInK) {
  for (double y : {0.3, 0.5, 0.7}) {
    double prev_x2 = -1.0, prev_x1 = 2.0;
    for (double k = 0.0; k <= 0.5 + 1e-12; k += 0.01) {
      const auto p = params(0.2, 0.25, 0.3, std::min(k, 0.5));
      const double x2 = x2k_ad(p).x2;
      const double x1 = x1k_ad(y, p);
      EXPECT_GE(x2, prev_x2 - 1e-12);
      EXPECT_LE(x1, prev_x1 + 1e-12);
      prev_x2 = x2;
      prev_x1 = x1;
    }
  }
}
