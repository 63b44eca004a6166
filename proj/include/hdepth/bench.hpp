#pragma once

// Timing harness over a grid of (distribution, d, n, variant) cells with a
// doubling n schedule. A row (distribution, d, variant) stops once a cell's
// aggregate time exceeds the per-cell limit; the next cell is then reported
// as absent.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hdepth/core.hpp"
#include "hdepth/testing.hpp"

namespace hdepth::bench {

enum class Aggregate { Mean, Median };

std::string to_string(Aggregate a);

struct BenchPlan {
  std::vector<std::size_t> dims;
  std::size_t n0 = 40;
  std::size_t n_max = 163840;
  std::vector<testing::Distribution> distributions;
  std::vector<Variant> variants;  // any of Rec, Comb2, Comb
  std::size_t reps = 10;
  double time_limit_per_cell = 60.0;  // seconds
  Aggregate aggregate = Aggregate::Mean;
  /// Comb cells switch to the median from this dimension on (its run
  /// times spread widely on tied data).
  std::size_t comb_median_from_d = 7;
  bool warmup = true;
  int workers = 1;
};

struct BenchRecord {
  testing::Distribution distribution = testing::Distribution::StandardNormal;
  std::size_t d = 0;
  std::size_t n = 0;
  Variant variant = Variant::Rec;
  std::size_t reps_completed = 0;
  double seconds = 0.0;
  Aggregate aggregate = Aggregate::Mean;
  std::vector<std::size_t> depths;  // one per completed rep
  int workers = 1;
  bool absent = false;  // budget exhausted before this cell
};

/// Times halfspace_depth of the origin on generated data. Rep r of every
/// cell uses seed + r, so all variants of a cell see the same clouds.
/// Generation is not timed. `sink`, if set, receives each record as soon
/// as it is complete.
std::vector<BenchRecord> run_bench(const BenchPlan& plan, std::uint64_t seed,
                                   const std::function<void(const BenchRecord&)>& sink = {});

/// Time of a single cell, without the row-walking logic.
BenchRecord run_cell(const BenchPlan& plan, testing::Distribution dist, std::size_t d,
                     std::size_t n, Variant variant, std::uint64_t seed);

std::string csv_header();
std::string csv_row(const BenchRecord& record);
/// Three significant digits, e.g. 0.117, 61.3, 1210.
std::string format_seconds(double seconds);

/// Least-squares slope of log(seconds) against log(n).
double loglog_slope(const std::vector<double>& n, const std::vector<double>& seconds);

}  // namespace hdepth::bench
