#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "hdepth/testing.hpp"
#include "support.hpp"

using namespace hdepth;
using namespace hdepth::testing;

TEST(Oracle, SymmetricCross) { EXPECT_EQ(oracle_nhd(PointCloud{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}), 2u); }

TEST(Oracle, SinglePoint) {
  EXPECT_EQ(oracle_nhd(PointCloud{{3}}), 0u);
  EXPECT_EQ(oracle_nhd(PointCloud{{1, 2}}), 0u);
  EXPECT_EQ(oracle_nhd(PointCloud{{1, 2, 3, 4}}), 0u);
}

TEST(Oracle, SimplexInR3) {
  EXPECT_EQ(oracle_nhd(PointCloud{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}), 1u);
}

TEST(Oracle, RejectsOriginPoints) {
  try {
    oracle_nhd(PointCloud{{1, 0}, {0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OriginPointPresent);
  }
}

TEST(Oracle, TooLarge) {
  const auto cloud = generate({Distribution::StandardNormal, 4, 200, 1});
  try {
    oracle_nhd(cloud);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(Oracle, NegationAndHalfBound) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t d = 1 + seed % 4;
    const auto dist = seed % 3 ? Distribution::GridUniform : Distribution::StandardNormal;
    const auto raw = generate({dist, d, 6 + seed % 15, seed});
    PointCloud cloud(d), negated(d);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (norm(raw[i]) == 0.0) continue;
      cloud.push_back(raw[i]);
      std::vector<double> x(raw[i].begin(), raw[i].end());
      for (double& v : x) v = -v;
      negated.push_back(x);
    }
    const std::size_t value = oracle_nhd(cloud);
    EXPECT_EQ(value, oracle_nhd(negated));
    EXPECT_LE(value, cloud.size() / 2);
  }
}

TEST(Oracle, PlanarDirectionsAgree) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto dist = seed % 2 ? Distribution::GridUniform : Distribution::StandardNormal;
    const auto raw = generate({dist, 2, 5 + seed, seed});
    PointCloud cloud(2);
    for (std::size_t i = 0; i < raw.size(); ++i)
      if (norm(raw[i]) > 0.0) cloud.push_back(raw[i]);
    EXPECT_EQ(oracle_nhd(cloud), oracle_nhd2_directions(cloud));
  }
}

TEST(OracleDepth, AbsorbsQuery) {
  const PointCloud cloud{{0, 0}, {0, 0}, {1, 0}, {-1, 0}};
  const std::vector<double> z{0, 0};
  EXPECT_EQ(oracle_depth(cloud, z), 3u);
}

TEST(Generator, Deterministic) {
  const auto a = generate({Distribution::GridUniform, 2, 3, 1});
  const auto b = generate({Distribution::GridUniform, 2, 3, 1});
  EXPECT_EQ(a.coords(), b.coords());
  EXPECT_EQ(a.size(), 3u);
  const auto c = generate({Distribution::GridUniform, 2, 3, 2});
  EXPECT_NE(a.coords(), c.coords());
}

TEST(Generator, FixedSequence) {
  // Pins the SplitMix64 stream so data sets are reproducible across builds.
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ULL);
}

TEST(Generator, NormalMeanNearZero) {
  const auto cloud = generate({Distribution::StandardNormal, 3, 1000, 7});
  for (std::size_t c = 0; c < 3; ++c) {
    double mean = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) mean += cloud[i][c];
    mean /= 1000.0;
    EXPECT_LT(std::abs(mean), 0.1);
  }
}

TEST(Generator, GridSupport) {
  const auto cloud = generate({Distribution::GridUniform, 5, 10000, 3});
  std::set<double> values(cloud.coords().begin(), cloud.coords().end());
  EXPECT_EQ(values, (std::set<double>{-2, -1, 0, 1, 2}));
}

TEST(Generator, Names) {
  EXPECT_EQ(parse_distribution("normal"), Distribution::StandardNormal);
  EXPECT_EQ(parse_distribution("grid"), Distribution::GridUniform);
  EXPECT_EQ(to_string(Distribution::GridUniform), "grid");
  EXPECT_THROW(parse_distribution("cauchy"), Error);
}

TEST(SplitMix64, RangesHold) {
  SplitMix64 rng(42);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(rng.below(7), 7u);
  }
}
