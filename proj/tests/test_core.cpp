#include <gtest/gtest.h>

#include <vector>

#include "hdepth/core.hpp"
#include "support.hpp"

using namespace hdepth;
namespace ht = hdepth::testing;

TEST(ClassifySign, ExactZeroIsZero) { EXPECT_EQ(classify_sign(0.0, 1.0, {}), Sign::Zero); }

TEST(ClassifySign, BelowThresholdIsZero) {
  EXPECT_EQ(classify_sign(1e-15, 1.0, {}), Sign::Zero);
}

TEST(ClassifySign, ClearNegative) { EXPECT_EQ(classify_sign(-0.5, 1.0, {}), Sign::Negative); }

TEST(ClassifySign, RelativeModeScalesTheDeadZone) {
  EXPECT_EQ(classify_sign(1e-8, 1e3, {}), Sign::Zero);
  EXPECT_EQ(classify_sign(1e-8, 1.0, {}), Sign::Positive);
}

TEST(ClassifySign, AbsoluteModeIgnoresScale) {
  const ToleranceParams tol{1e-10, ScaleMode::Absolute};
  EXPECT_EQ(classify_sign(1e-8, 1e3, tol), Sign::Positive);
  EXPECT_EQ(classify_sign(-1e-11, 1e3, tol), Sign::Zero);
}

TEST(CountSides, AxisSplit) {
  const PointCloud cloud{{1, 0}, {-1, 0}, {0, 1}};
  const std::vector<double> p{1, 0};
  const auto c = count_sides(cloud, p);
  EXPECT_EQ(c.n_plus, 1u);
  EXPECT_EQ(c.n_minus, 1u);
  EXPECT_EQ(c.n_zero, 1u);
  EXPECT_EQ(c.zero, std::vector<std::size_t>{2});
}

TEST(CountSides, OrthogonalPointIsZero) {
  const PointCloud cloud{{1, 1}};
  const std::vector<double> p{1, -1};
  EXPECT_EQ(count_sides(cloud, p).n_zero, 1u);
}

TEST(CountSides, BothNegative) {
  const PointCloud cloud{{2, 0}, {3, 0}};
  const std::vector<double> p{-1, 0};
  EXPECT_EQ(count_sides(cloud, p).n_minus, 2u);
}

TEST(CountSides, Errors) {
  const PointCloud cloud{{1, 0}};
  const std::vector<double> zero{0, 0};
  const std::vector<double> wrong{1, 0, 0};
  try {
    count_sides(cloud, zero);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroDirection);
  }
  try {
    count_sides(cloud, wrong);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

class CountSidesProperty : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(CountSidesProperty, PartitionNegationAndScaling) {
  ht::SplitMix64 rng(GetParam());
  const std::size_t d = 1 + rng.below(5);
  const auto dist = rng.below(2) ? ht::Distribution::GridUniform
                                 : ht::Distribution::StandardNormal;
  const auto cloud = test::sample(dist, d, 30, GetParam());
  std::vector<double> p(d);
  for (double& v : p) v = static_cast<double>(static_cast<int>(rng.below(5)) - 2);
  if (norm(p) == 0.0) p[0] = 1.0;

  const auto c = count_sides(cloud, p);
  EXPECT_EQ(c.n_plus + c.n_zero + c.n_minus, cloud.size());
  std::vector<int> seen(cloud.size(), 0);
  for (auto i : c.plus) ++seen[i];
  for (auto i : c.zero) ++seen[i];
  for (auto i : c.minus) ++seen[i];
  for (int s : seen) EXPECT_EQ(s, 1);

  std::vector<double> neg(p), scaled(p);
  for (double& v : neg) v = -v;
  const double factor = 0.25 + 100.0 * rng.uniform();
  for (double& v : scaled) v *= factor;
  const auto cn = count_sides(cloud, neg);
  EXPECT_EQ(cn.n_plus, c.n_minus);
  EXPECT_EQ(cn.n_minus, c.n_plus);
  EXPECT_EQ(cn.n_zero, c.n_zero);
  const auto cs = count_sides(cloud, scaled);
  EXPECT_EQ(cs.plus, c.plus);
  EXPECT_EQ(cs.zero, c.zero);
  EXPECT_EQ(cs.minus, c.minus);
}

INSTANTIATE_TEST_SUITE_P(Seeds, CountSidesProperty, ::testing::Range<std::uint64_t>(1, 41));

TEST(PointCloud, ConstructionAndSelect) {
  const PointCloud cloud{{1, 2}, {3, 4}, {5, 6}};
  EXPECT_EQ(cloud.size(), 3u);
  EXPECT_EQ(cloud.dim(), 2u);
  const std::vector<std::size_t> idx{2, 0};
  const auto s = cloud.select(idx);
  EXPECT_EQ(s[0][0], 5.0);
  EXPECT_EQ(s[1][1], 2.0);
}

TEST(PointCloud, RejectsMismatchedRows) {
  PointCloud cloud(2);
  const std::vector<double> bad{1, 2, 3};
  EXPECT_THROW(cloud.push_back(bad), Error);
  EXPECT_THROW(PointCloud(2, 2, {1, 2, 3}), Error);
  EXPECT_THROW(PointCloud(0), Error);
}

TEST(Variant, Names) {
  EXPECT_EQ(to_string(Variant::Rec), "rec");
  EXPECT_EQ(to_string(Variant::Comb2), "comb2");
  EXPECT_EQ(to_string(Variant::Comb), "comb");
  EXPECT_EQ(to_string(Variant::GenericK, 3), "k=3");
}

TEST(DepthResult, HdUsesN) {
  DepthResult r;
  r.nhd = 3;
  r.n = 4;
  EXPECT_DOUBLE_EQ(r.hd(), 0.75);
}
