#include <gtest/gtest.h>

#include "support/generators.hpp"

using namespace aqg;

TEST(Region, BranchesAndThresholds) {
  const auto low = classify_region(0.25, 0.7);
  EXPECT_EQ(low.branch, Branch::LowAlpha);
  EXPECT_DOUBLE_EQ(low.threshold, 1.0 / 1.5);
  EXPECT_TRUE(low.satisfied);

  const auto high = classify_region(0.75, 0.75);
  EXPECT_EQ(high.branch, Branch::HighAlpha);
  EXPECT_DOUBLE_EQ(high.threshold, 1.0 / 6.0);
  EXPECT_NEAR(high.margin, 0.75 - 1.0 / 6.0, 1e-15);
  EXPECT_TRUE(high.satisfied);
}

TEST(Region, BoundaryIsExcluded) {
  const auto rc = classify_region(0.75, 1.0 / 6.0);
  EXPECT_FALSE(rc.satisfied);
  EXPECT_EQ(rc.margin, 0.0);
  EXPECT_FALSE(classify_region(0.25, 2.0 / 3.0).satisfied);
}

TEST(Region, ContinuousAtOneHalf) {
  EXPECT_DOUBLE_EQ(region_threshold(0.5), 0.5);
  const double eps = 1e-9;
  EXPECT_NEAR(region_threshold(0.5 - eps), 0.5, 1e-8);
  EXPECT_NEAR(region_threshold(0.5 + eps), 0.5, 1e-8);
  EXPECT_EQ(classify_region(0.5, 0.5).branch, Branch::LowAlpha);
}

TEST(Region, RejectsClosedEndpoints) {
  EXPECT_THROW(classify_region(0.0, 0.5), InvalidArgument);
  EXPECT_THROW(classify_region(1.0, 0.5), InvalidArgument);
  EXPECT_THROW(classify_region(0.5, 1.0), InvalidArgument);
}

TEST(Region, MarginSignMatchesSatisfaction) {
  gen::Engine rng(41);
  for (int trial = 0; trial < 2000; ++trial) {
    const double a = gen::uniform(rng, 1e-3, 1 - 1e-3), b = gen::uniform(rng, 1e-3, 1 - 1e-3);
    const auto rc = classify_region(a, b);
    ASSERT_EQ(rc.satisfied, rc.margin > 0);
    ASSERT_DOUBLE_EQ(rc.margin, b - rc.threshold);
    ASSERT_GT(rc.threshold, 0.0);
    ASSERT_LT(rc.threshold, 1.0);
  }
}

TEST(DissipationParams, ValidationMessages) {
  DissipationParams p;
  p.alpha = 1.0;
  try {
    p.validate();
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_STREQ(e.what(), "alpha must lie in the open interval (0,1)");
  }
  p.alpha = 0.5;
  p.nu = 0;
  EXPECT_THROW(p.validate(), InvalidArgument);
}
