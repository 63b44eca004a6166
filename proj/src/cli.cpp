#include "hdepth/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <memory>
#include <sstream>

#include "hdepth/bench.hpp"
#include "hdepth/exact.hpp"
#include "hdepth/io.hpp"
#include "hdepth/testing.hpp"

namespace hdepth::cli {

namespace {

std::size_t parse_size(const std::string& text, const std::string& what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::Parse, "cannot parse " + what + " '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream is(text);
  while (std::getline(is, part, sep)) {
    if (!part.empty()) parts.push_back(part);
  }
  return parts;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::Parse: return kExitParse;
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvalidK: return kExitDimension;
    default: return kExitFailure;
  }
}

std::string fraction(std::size_t num, std::size_t den) {
  return std::to_string(num) + "/" + std::to_string(den);
}

std::string decimal(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

nlohmann::json to_json(const DepthResult& r, std::size_t d, std::span<const double> z) {
  return {
      {"nhd", r.nhd},
      {"hd", r.hd()},
      {"hd_fraction", fraction(r.nhd, r.n)},
      {"n", r.n},
      {"d", d},
      {"z", std::vector<double>(z.begin(), z.end())},
      {"variant", to_string(r.variant, r.k)},
      {"k", r.k},
      {"reduced_dim", r.reduced_dim},
      {"zeros_absorbed", r.zeros_absorbed},
      {"elapsed", r.elapsed},
  };
}

struct ComputeArgs {
  std::string input;
  std::string z;
  std::string z_file;
  std::string algorithm = "auto";
  bool early_exit = false;
  bool normalize = false;
  bool absolute = false;
  double eps = 1e-10;
  std::string workers = "1";
  std::string format = "text";
  std::string out;
};

int parse_workers(const std::string& text) {
  if (text == "auto") return 0;
  const auto w = parse_size(text, "worker count");
  if (w == 0) throw Error(ErrorCode::Parse, "worker count must be positive or 'auto'");
  return static_cast<int>(w);
}

int cmd_compute(const ComputeArgs& a, std::ostream& out) {
  const PointCloud cloud = io::read_points_file(a.input);

  std::vector<std::vector<double>> queries;
  if (!a.z_file.empty()) {
    const PointCloud zs = io::read_points_file(a.z_file);
    for (std::size_t i = 0; i < zs.size(); ++i) queries.emplace_back(zs[i].begin(), zs[i].end());
  } else if (!a.z.empty()) {
    queries.push_back(io::parse_vector(a.z, "--z"));
  } else {
    queries.emplace_back(cloud.dim(), 0.0);
  }

  AlgorithmOptions opts;
  std::tie(opts.variant, opts.k) = parse_variant(a.algorithm);
  opts.early_exit = a.early_exit;
  opts.normalize = a.normalize;
  opts.tol.eps_zero = a.eps;
  opts.tol.scale_mode = a.absolute ? ScaleMode::Absolute : ScaleMode::Relative;
  opts.parallel_workers = parse_workers(a.workers);
  if (a.eps < 0) throw Error(ErrorCode::Parse, "--eps must be nonnegative");
  if (a.format != "text" && a.format != "json") {
    throw Error(ErrorCode::Parse, "--format must be text or json");
  }

  std::unique_ptr<std::ofstream> record_file;
  if (!a.out.empty()) {
    record_file = std::make_unique<std::ofstream>(a.out);
    if (!*record_file) throw Error(ErrorCode::Parse, a.out + ":0:0: cannot open output file");
  }

  for (const auto& z : queries) {
    const DepthResult r = halfspace_depth(cloud, z, opts);
    const auto record = to_json(r, cloud.dim(), z);
    if (a.format == "json") {
      out << record.dump() << '\n';
    } else {
      out << "nhd=" << r.nhd << " hd=" << decimal(r.hd()) << " hd_frac=" << fraction(r.nhd, r.n)
          << " n=" << r.n << " d=" << cloud.dim() << " variant=" << to_string(r.variant, r.k)
          << " zeros_absorbed=" << r.zeros_absorbed << " elapsed=" << r.elapsed << '\n';
    }
    if (record_file) *record_file << record.dump() << '\n';
  }
  return kExitOk;
}

struct BenchArgs {
  std::string dist = "normal";
  std::string dims = "3";
  std::string variants = "rec,comb2,comb";
  std::size_t n0 = 40;
  std::size_t n_max = 163840;
  std::size_t reps = 10;
  double limit = 60.0;
  std::uint64_t seed = 1;
  std::string aggregate = "mean";
  std::string workers = "1";
  bool no_warmup = false;
  std::string out;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  bench::BenchPlan plan;
  plan.dims = parse_dims(a.dims);
  for (const auto& name : split(a.dist, ',')) plan.distributions.push_back(testing::parse_distribution(name));
  for (const auto& name : split(a.variants, ',')) {
    const auto [v, k] = parse_variant(name);
    if (v != Variant::Rec && v != Variant::Comb2 && v != Variant::Comb) {
      throw Error(ErrorCode::Parse, "bench variants are rec, comb2 and comb");
    }
    plan.variants.push_back(v);
  }
  plan.n0 = a.n0;
  plan.n_max = a.n_max;
  plan.reps = a.reps;
  plan.time_limit_per_cell = a.limit;
  if (a.aggregate == "mean") {
    plan.aggregate = bench::Aggregate::Mean;
  } else if (a.aggregate == "median") {
    plan.aggregate = bench::Aggregate::Median;
  } else {
    throw Error(ErrorCode::Parse, "--aggregate must be mean or median");
  }
  plan.workers = parse_workers(a.workers);
  plan.warmup = !a.no_warmup;

  std::ofstream file;
  std::ostream* sink = &out;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw Error(ErrorCode::Parse, a.out + ":0:0: cannot open output file");
    sink = &file;
  }
  *sink << bench::csv_header() << '\n';
  bench::run_bench(plan, a.seed, [&](const bench::BenchRecord& r) {
    *sink << bench::csv_row(r) << '\n';
    sink->flush();
  });
  return kExitOk;
}

struct VerifyArgs {
  std::size_t instances = 50;
  std::string dims = "1..4";
  std::size_t max_n = 20;
  std::string dist = "normal,grid";
  std::uint64_t seed = 1;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const auto dims = parse_dims(a.dims);
  std::vector<testing::Distribution> dists;
  for (const auto& name : split(a.dist, ',')) dists.push_back(testing::parse_distribution(name));
  if (dims.empty() || dists.empty()) throw Error(ErrorCode::Parse, "nothing to verify");

  testing::SplitMix64 pick(a.seed);
  std::size_t failures = 0;
  for (std::size_t t = 0; t < a.instances; ++t) {
    const std::size_t d = dims[pick.below(dims.size())];
    const auto dist = dists[pick.below(dists.size())];
    const std::size_t lo = d + 1;
    const std::size_t n = lo + pick.below(std::max<std::size_t>(a.max_n, lo) - lo + 1);
    const auto cloud = testing::generate({dist, d, n, a.seed * 1000003 + t});
    const std::vector<double> origin(d, 0.0);
    const std::size_t expected = testing::oracle_depth(cloud, origin);

    std::vector<std::pair<std::string, AlgorithmOptions>> runs;
    for (Variant v : {Variant::Rec, Variant::Comb2, Variant::Comb}) {
      AlgorithmOptions o;
      o.variant = v;
      runs.emplace_back(to_string(v), o);
    }
    for (int k = 1; k < static_cast<int>(d); ++k) {
      AlgorithmOptions o;
      o.variant = Variant::GenericK;
      o.k = k;
      runs.emplace_back(to_string(Variant::GenericK, k), o);
    }
    for (const auto& [name, o] : runs) {
      const auto got = halfspace_depth(cloud, origin, o).nhd;
      if (got != expected) {
        ++failures;
        out << "MISMATCH instance=" << t << " dist=" << testing::to_string(dist) << " d=" << d
            << " n=" << n << " variant=" << name << " got=" << got << " oracle=" << expected << '\n';
      }
    }
  }
  out << (failures == 0 ? "PASS" : "FAIL") << " instances=" << a.instances
      << " mismatches=" << failures << '\n';
  return failures == 0 ? kExitOk : kExitFailure;
}

}  // namespace

std::pair<Variant, int> parse_variant(const std::string& text) {
  if (text == "rec") return {Variant::Rec, 1};
  if (text == "comb2") return {Variant::Comb2, 0};
  if (text == "comb") return {Variant::Comb, 0};
  if (text == "auto") return {Variant::Auto, 0};
  if (text.rfind("k=", 0) == 0) {
    const std::string num = text.substr(2);
    int k = 0;
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), k);
    if (ec == std::errc() && ptr == num.data() + num.size() && !num.empty()) {
      return {Variant::GenericK, k};
    }
  }
  throw Error(ErrorCode::Parse, "unknown algorithm '" + text + "' (rec|comb2|comb|k=<int>|auto)");
}

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> dims;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const auto lo = parse_size(text.substr(0, dots), "dimension");
    const auto hi = parse_size(text.substr(dots + 2), "dimension");
    if (lo < 1 || hi < lo) throw Error(ErrorCode::Parse, "bad dimension range '" + text + "'");
    for (std::size_t d = lo; d <= hi; ++d) dims.push_back(d);
    return dims;
  }
  for (const auto& part : split(text, ',')) {
    const auto d = parse_size(part, "dimension");
    if (d < 1) throw Error(ErrorCode::Parse, "dimensions start at 1");
    dims.push_back(d);
  }
  return dims;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact halfspace (Tukey) depth"};
  app.require_subcommand(1);

  ComputeArgs compute;
  auto* c = app.add_subcommand("compute", "Depth of one or more query points w.r.t. a point file");
  c->add_option("input", compute.input, "Data file, one point per row")->required();
  c->add_option("--z", compute.z, "Query point, e.g. \"0,0,0\"");
  c->add_option("--z-file", compute.z_file, "File of query points, one per row");
  c->add_option("--algorithm", compute.algorithm, "rec | comb2 | comb | k=<int> | auto");
  c->add_flag("--early-exit", compute.early_exit, "Stop as soon as the depth reaches 0");
  c->add_flag("--normalize", compute.normalize, "Scale points to unit norm before dispatch");
  c->add_flag("--absolute", compute.absolute, "Absolute instead of relative zero tolerance");
  c->add_option("--eps", compute.eps, "Zero tolerance (default 1e-10)");
  c->add_option("--workers", compute.workers, "Worker threads: <int> or auto");
  c->add_option("--format", compute.format, "text | json");
  c->add_option("--out", compute.out, "Also write one JSON record per query to this file");

  BenchArgs bench_args;
  auto* b = app.add_subcommand("bench", "Timing grid over (distribution, d, n, variant), CSV output");
  b->add_option("--dist", bench_args.dist, "normal | grid | normal,grid");
  b->add_option("--dims", bench_args.dims, "e.g. 3 or 3..6 or 3,5");
  b->add_option("--variants", bench_args.variants, "Subset of rec,comb2,comb");
  b->add_option("--n0", bench_args.n0, "First n of the doubling schedule");
  b->add_option("--n-max", bench_args.n_max, "Largest n attempted");
  b->add_option("--reps", bench_args.reps, "Repetitions per cell");
  b->add_option("--limit", bench_args.limit, "Per-cell time limit in seconds");
  b->add_option("--seed", bench_args.seed, "Base seed; rep r uses seed + r");
  b->add_option("--aggregate", bench_args.aggregate, "mean | median");
  b->add_option("--workers", bench_args.workers, "Worker threads: <int> or auto");
  b->add_flag("--no-warmup", bench_args.no_warmup, "Skip the discarded warm-up rep");
  b->add_option("--out", bench_args.out, "CSV file instead of stdout");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Compare every variant with the brute-force oracle");
  v->add_option("--instances", verify.instances, "Number of random instances");
  v->add_option("--dims", verify.dims, "Dimensions to draw from, e.g. 1..4");
  v->add_option("--max-n", verify.max_n, "Largest cloud size");
  v->add_option("--dist", verify.dist, "normal | grid | normal,grid");
  v->add_option("--seed", verify.seed, "Seed");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (c->parsed()) return cmd_compute(compute, out);
    if (b->parsed()) return cmd_bench(bench_args, out);
    if (v->parsed()) return cmd_verify(verify, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace hdepth::cli
