#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hdepth/bench.hpp"

using namespace hdepth;
namespace ht = hdepth::testing;
using namespace hdepth::bench;

namespace {

BenchPlan small_plan() {
  BenchPlan plan;
  plan.dims = {3};
  plan.n0 = 10;
  plan.n_max = 40;
  plan.distributions = {ht::Distribution::StandardNormal};
  plan.variants = {Variant::Rec, Variant::Comb2, Variant::Comb};
  plan.reps = 2;
  plan.time_limit_per_cell = 30.0;
  return plan;
}

}  // namespace

TEST(RunBench, EmptyPlan) {
  EXPECT_TRUE(run_bench(BenchPlan{}, 1).empty());
  BenchPlan plan = small_plan();
  plan.variants.clear();
  EXPECT_TRUE(run_bench(plan, 1).empty());
}

TEST(RunBench, DoublingRowsAndAgreement) {
  const auto records = run_bench(small_plan(), 5);
  ASSERT_EQ(records.size(), 9u);  // 3 variants x n in {10, 20, 40}
  for (const auto& r : records) {
    EXPECT_FALSE(r.absent);
    EXPECT_EQ(r.reps_completed, 2u);
    EXPECT_GE(r.seconds, 0.0);
    EXPECT_EQ(r.depths.size(), 2u);
  }
  // Same (n, rep) sees the same data under every variant.
  for (const auto& a : records)
    for (const auto& b : records)
      if (a.n == b.n) EXPECT_EQ(a.depths, b.depths);
}

TEST(RunBench, SinkSeesEveryRecord) {
  std::size_t seen = 0;
  const auto records = run_bench(small_plan(), 5, [&](const BenchRecord&) { ++seen; });
  EXPECT_EQ(seen, records.size());
}

TEST(RunBench, BudgetStopsTheRow) {
  BenchPlan plan = small_plan();
  plan.variants = {Variant::Comb};
  plan.n_max = 640;
  plan.time_limit_per_cell = 0.0;  // first cell already exceeds it
  const auto records = run_bench(plan, 1);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_FALSE(records[0].absent);
  EXPECT_TRUE(records[1].absent);
  EXPECT_EQ(records[1].n, 20u);
  EXPECT_EQ(csv_row(records[1]).find("---") != std::string::npos, true);
}

TEST(RunBench, RejectsBadPlans) {
  BenchPlan plan = small_plan();
  plan.reps = 0;
  EXPECT_THROW(run_bench(plan, 1), Error);
  plan = small_plan();
  plan.n0 = 3;
  EXPECT_THROW(run_bench(plan, 1), Error);
}

TEST(RunBench, MedianForHighDimensionalComb) {
  BenchPlan plan = small_plan();
  plan.comb_median_from_d = 3;
  plan.n_max = 10;
  for (const auto& r : run_bench(plan, 2)) {
    EXPECT_EQ(r.aggregate, r.variant == Variant::Comb ? Aggregate::Median : Aggregate::Mean);
  }
}

TEST(Csv, HeaderAndRow) {
  EXPECT_EQ(csv_header(), "distribution,d,n,variant,reps,aggregate_kind,seconds,depth_min,depth_max,workers");
  BenchRecord r;
  r.distribution = ht::Distribution::GridUniform;
  r.d = 3;
  r.n = 320;
  r.variant = Variant::Comb;
  r.reps_completed = 10;
  r.seconds = 2.1149;
  r.depths = {7, 9, 8};
  EXPECT_EQ(csv_row(r), "grid,3,320,comb,10,mean,2.11,7,9,1");
}

TEST(Csv, ThreeSignificantDigits) {
  EXPECT_EQ(format_seconds(0.1171), "0.117");
  EXPECT_EQ(format_seconds(61.34), "61.3");
  EXPECT_EQ(format_seconds(1213.0), "1210");
  EXPECT_EQ(format_seconds(0.0), "0.000");
}

TEST(Slope, RecoversPowerLaw) {
  std::vector<double> n, t;
  for (double x : {100.0, 200.0, 400.0, 800.0}) {
    n.push_back(x);
    t.push_back(1e-6 * x * x * x);
  }
  EXPECT_NEAR(loglog_slope(n, t), 3.0, 1e-9);
}
