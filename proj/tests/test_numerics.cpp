#include <gtest/gtest.h>

#include <cmath>

#include "modeq/errors.hpp"
#include "modeq/model.hpp"
#include "modeq/numerics.hpp"

using namespace modeq;

TEST(Bisect, FindsRoots) {
  EXPECT_NEAR(bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-9), std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(bisect([](double x) { return x; }, -1.0, 1.0, 1e-9), 0.0, 1e-9);
}

TEST(Bisect, RequiresSignChange) {
  try {
    bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoBracket);
  }
}

TEST(MaximizeScalar, Parabola) {
  const auto m = maximize_scalar({[](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0});
  EXPECT_NEAR(m.arg, 0.3, 1e-9);
  EXPECT_NEAR(m.value, 0.0, 1e-15);
}

TEST(MaximizeScalar, ConstantTiesToLowerBound) {
  const auto m = maximize_scalar({[](double) { return 4.0; }, -2.0, 3.0});
  EXPECT_EQ(m.arg, -2.0);
  EXPECT_EQ(m.value, 4.0);
}

TEST(MaximizeScalar, AdvertisingProfit) {
  ModelParams p;
  p.alpha = 0.2;
  p.v = 0.25;
  const auto m = maximize_scalar({[&](double y) { return y - marginal_user_ad(y, p); }, 0.0, 1.0});
  EXPECT_NEAR(m.arg, 0.707107, 1e-4);
  EXPECT_NEAR(m.value, 0.707107, 1e-4);
}

TEST(MaximizeScalar, NeverWorseThanGrid) {
  auto f = [](double x) { return std::sin(25.0 * x) + (x > 0.8 ? 0.5 : 0.0); };
  const auto m = maximize_scalar({f, 0.0, 1.0, 50, 60});
  for (int i = 0; i <= 50; ++i) EXPECT_GE(m.value, f(i / 50.0));
}

TEST(MaximizeBox2, Paraboloid) {
  const auto m = maximize_box2(
      [](double x, double y) { return -(x - 0.2) * (x - 0.2) - (y - 0.7) * (y - 0.7); },
      {0.0, 1.0, 0.0, 1.0});
  EXPECT_NEAR(m.x, 0.2, 1e-8);
  EXPECT_NEAR(m.y, 0.7, 1e-8);
  EXPECT_NEAR(m.value, 0.0, 1e-14);
}

TEST(MaximizeBox2, SubscriptionSurface) {
  ModelParams p;
  p.alpha = 0.0;
  p.v = 0.25;
  const auto m = maximize_box2(
      [&](double y, double price) { return price * (y - marginal_user_sub(y, price, p)); },
      {0.0, 1.0, 0.0, 0.5});
  EXPECT_NEAR(m.x, 0.408248, 1e-4);
  EXPECT_NEAR(m.y, 0.166667, 1e-4);
  EXPECT_NEAR(m.value, 0.068041, 1e-6);
}

TEST(MaximizeBox2, IgnoredCoordinateTiesToLowerBound) {
  const auto m = maximize_box2([](double x, double) { return -(x - 0.5) * (x - 0.5); },
                               {0.0, 1.0, -1.0, 1.0});
  EXPECT_NEAR(m.x, 0.5, 1e-9);
  EXPECT_EQ(m.y, -1.0);
}
