#include "hdepth/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "hdepth/exact.hpp"

namespace hdepth::bench {

std::string to_string(Aggregate a) { return a == Aggregate::Mean ? "mean" : "median"; }

namespace {

double aggregate_of(std::vector<double> times, Aggregate kind) {
  if (times.empty()) return 0.0;
  if (kind == Aggregate::Mean) {
    return std::accumulate(times.begin(), times.end(), 0.0) / static_cast<double>(times.size());
  }
  std::sort(times.begin(), times.end());
  const std::size_t m = times.size() / 2;
  return times.size() % 2 == 1 ? times[m] : 0.5 * (times[m - 1] + times[m]);
}

}  // namespace

BenchRecord run_cell(const BenchPlan& plan, testing::Distribution dist, std::size_t d,
                     std::size_t n, Variant variant, std::uint64_t seed) {
  BenchRecord rec;
  rec.distribution = dist;
  rec.d = d;
  rec.n = n;
  rec.variant = variant;
  rec.workers = resolve_workers(plan.workers);
  rec.aggregate = (variant == Variant::Comb && d >= plan.comb_median_from_d) ? Aggregate::Median
                                                                              : plan.aggregate;

  AlgorithmOptions opts;
  opts.variant = variant;
  opts.parallel_workers = plan.workers;
  const std::vector<double> origin(d, 0.0);

  if (plan.warmup) {
    const auto cloud = testing::generate({dist, d, n, seed});
    (void)halfspace_depth(cloud, origin, opts);
  }

  std::vector<double> times;
  double total = 0.0;
  for (std::size_t r = 0; r < plan.reps; ++r) {
    const auto cloud = testing::generate({dist, d, n, seed + r});
    const auto start = std::chrono::steady_clock::now();
    const auto result = halfspace_depth(cloud, origin, opts);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    times.push_back(dt);
    rec.depths.push_back(result.nhd);
    total += dt;
    if (total > plan.time_limit_per_cell) break;
  }
  rec.reps_completed = times.size();
  rec.seconds = aggregate_of(times, rec.aggregate);
  return rec;
}

std::vector<BenchRecord> run_bench(const BenchPlan& plan, std::uint64_t seed,
                                   const std::function<void(const BenchRecord&)>& sink) {
  if (plan.reps < 1) throw Error(ErrorCode::InvalidArgument, "bench plan needs reps >= 1");
  for (std::size_t d : plan.dims) {
    if (plan.n0 < d + 1) {
      throw Error(ErrorCode::InvalidArgument, "bench plan needs n0 >= d + 1 (d=" + std::to_string(d) + ")");
    }
  }

  std::vector<BenchRecord> out;
  auto emit = [&](BenchRecord rec) {
    if (sink) sink(rec);
    out.push_back(std::move(rec));
  };

  for (auto dist : plan.distributions) {
    for (std::size_t d : plan.dims) {
      for (Variant variant : plan.variants) {
        for (std::size_t n = plan.n0; n <= plan.n_max; n *= 2) {
          auto rec = run_cell(plan, dist, d, n, variant, seed);
          const bool over = rec.seconds > plan.time_limit_per_cell;
          emit(std::move(rec));
          if (over) {
            if (n * 2 <= plan.n_max) {
              BenchRecord gap;
              gap.distribution = dist;
              gap.d = d;
              gap.n = n * 2;
              gap.variant = variant;
              gap.aggregate = plan.aggregate;
              gap.workers = resolve_workers(plan.workers);
              gap.absent = true;
              emit(std::move(gap));
            }
            break;
          }
        }
      }
    }
  }
  return out;
}

std::string csv_header() {
  return "distribution,d,n,variant,reps,aggregate_kind,seconds,depth_min,depth_max,workers";
}

std::string csv_row(const BenchRecord& r) {
  std::ostringstream os;
  os << testing::to_string(r.distribution) << ',' << r.d << ',' << r.n << ','
     << to_string(r.variant) << ',' << r.reps_completed << ',' << to_string(r.aggregate) << ',';
  if (r.absent || r.depths.empty()) {
    os << "---,,";
  } else {
    const auto [lo, hi] = std::minmax_element(r.depths.begin(), r.depths.end());
    os << format_seconds(r.seconds) << ',' << *lo << ',' << *hi;
  }
  os << ',' << r.workers;
  return os.str();
}

std::string format_seconds(double seconds) {
  if (!(seconds > 0.0)) return "0.000";
  const int exponent = static_cast<int>(std::floor(std::log10(seconds)));
  const double unit = std::pow(10.0, exponent - 2);
  const double rounded = std::round(seconds / unit) * unit;
  const int decimals = std::max(0, 2 - static_cast<int>(std::floor(std::log10(rounded))));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded);
  return buf;
}

double loglog_slope(const std::vector<double>& n, const std::vector<double>& seconds) {
  const std::size_t m = std::min(n.size(), seconds.size());
  if (m < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = std::log(n[i]);
    const double y = std::log(seconds[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double mm = static_cast<double>(m);
  return (mm * sxy - sx * sy) / (mm * sxx - sx * sx);
}

}  // namespace hdepth::bench
