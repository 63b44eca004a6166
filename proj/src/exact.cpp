#include "hdepth/exact.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "hdepth/depth_low_d.hpp"

#ifdef HDEPTH_HAVE_OPENMP
#include <omp.h>
#endif

namespace hdepth {

namespace {

constexpr std::size_t kSkip = std::numeric_limits<std::size_t>::max();

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

struct Loop {
  int workers = 1;
  bool early_exit = false;
  Deadline deadline;
};

[[noreturn]] void deadline_exceeded() {
  throw Error(ErrorCode::DeadlineExceeded, "deadline passed before the depth was found");
}

// Next k-subset in lexicographic order with idx[0] held fixed.
bool next_tail(std::span<std::size_t> idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t p = k; p-- > 1;) {
    if (idx[p] < n - k + p) {
      ++idx[p];
      for (std::size_t q = p + 1; q < k; ++q) idx[q] = idx[q - 1] + 1;
      return true;
    }
  }
  return false;
}

// Min-reduction of body(I) over all k-subsets I of {0..n-1}. Bodies return
// kSkip for dependent subsets. The outer loop runs over the first index and
// is split across workers; each worker builds its own body (and with it its
// scratch buffers) through make_body.
template <class MakeBody>
std::size_t min_over_subsets(std::size_t n, std::size_t k, const Loop& loop, MakeBody&& make_body) {
  if (k == 0 || k > n) return kSkip;
  const std::size_t firsts = n - k + 1;

  auto run_first = [&](auto& body, std::size_t i0, std::size_t& best,
                       const std::atomic<bool>* stop) {
    std::vector<std::size_t> idx(k);
    for (std::size_t q = 0; q < k; ++q) idx[q] = i0 + q;
    std::size_t tick = 0;
    do {
      if (loop.deadline && (tick++ & 255u) == 0 &&
          std::chrono::steady_clock::now() > *loop.deadline) {
        deadline_exceeded();
      }
      const std::size_t v = body(std::span<const std::size_t>(idx));
      if (v < best) best = v;
      if (loop.early_exit && best == 0) return;
      if (stop != nullptr && stop->load(std::memory_order_relaxed)) return;
    } while (next_tail(idx, n));
  };

  std::size_t best = kSkip;
#ifdef HDEPTH_HAVE_OPENMP
  if (loop.workers > 1 && firsts > 1) {
    std::atomic<bool> stop{false};
    std::exception_ptr failure;
    std::mutex failure_mutex;
#pragma omp parallel num_threads(loop.workers)
    {
      auto body = make_body();
#pragma omp for schedule(dynamic, 1) reduction(min : best)
      for (long long i0 = 0; i0 < static_cast<long long>(firsts); ++i0) {
        if (stop.load(std::memory_order_relaxed)) continue;
        try {
          run_first(body, static_cast<std::size_t>(i0), best, &stop);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          stop.store(true);
        }
        if (loop.early_exit && best == 0) stop.store(true);
      }
    }
    if (failure) std::rethrow_exception(failure);
    return best;
  }
#endif
  auto body = make_body();
  for (std::size_t i0 = 0; i0 < firsts; ++i0) {
    run_first(body, i0, best, nullptr);
    if (loop.early_exit && best == 0) break;
  }
  return best;
}

std::vector<double> row_norms(const PointCloud& cloud) {
  std::vector<double> out(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) out[i] = norm(cloud[i]);
  return out;
}

// Per-point dead zone for projections onto unit vectors.
std::vector<double> zero_bounds(const std::vector<double>& norms, const ToleranceParams& tol) {
  std::vector<double> out(norms.size());
  for (std::size_t i = 0; i < norms.size(); ++i) out[i] = zero_bound(norms[i], tol);
  return out;
}

std::vector<double> column0(const PointCloud& cloud) {
  std::vector<double> v(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) v[i] = cloud[i][0];
  return v;
}

inline double dot_raw(const double* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t c = 0; c < d; ++c) s += a[c] * b[c];
  return s;
}

struct SideCount {
  std::size_t pos = 0;
  std::size_t neg = 0;
};

template <std::size_t D>
SideCount count_sides_fixed(const double* p, const double* x, const double* bounds, std::size_t n) {
  std::size_t pos = 0, neg = 0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t c = 0; c < D; ++c) s += p[c] * x[j * D + c];
    pos += s > bounds[j];
    neg += s < -bounds[j];
  }
  return {pos, neg};
}

// Branch-free side counts against the hyperplane with normal p.
SideCount count_sides_raw(const double* p, const double* x, const double* bounds, std::size_t n,
                          std::size_t d) {
  switch (d) {
    case 2: return count_sides_fixed<2>(p, x, bounds, n);
    case 3: return count_sides_fixed<3>(p, x, bounds, n);
    case 4: return count_sides_fixed<4>(p, x, bounds, n);
    case 5: return count_sides_fixed<5>(p, x, bounds, n);
    case 6: return count_sides_fixed<6>(p, x, bounds, n);
    default: break;
  }
  std::size_t pos = 0, neg = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const double s = dot_raw(p, x + j * d, d);
    pos += s > bounds[j];
    neg += s < -bounds[j];
  }
  return {pos, neg};
}

class Engine {
 public:
  explicit Engine(const AlgorithmOptions& opts)
      : tol_(opts.tol), early_exit_(opts.early_exit), deadline_(opts.deadline) {}

  std::size_t comb(const PointCloud& cloud, int workers) const;
  std::size_t comb2(const PointCloud& cloud, int workers) const;
  std::size_t rec(const PointCloud& cloud, int workers) const;
  std::size_t generic(const PointCloud& cloud, std::size_t k, int workers) const;

 private:
  Loop loop(int workers) const { return {workers, early_exit_, deadline_}; }

  // Depth in dimension m for the inner calls of the generic-k route.
  std::size_t dispatch(const PointCloud& cloud) const {
    if (cloud.empty()) return 0;
    if (cloud.dim() == 1) return nhd1(column0(cloud), tol_);
    if (cloud.dim() == 2) return nhd2(cloud, tol_);
    return generic(cloud, 1, 1);
  }

  // A kernel found no independent subset: the cloud does not span R^d.
  template <class Recurse>
  std::size_t fallback(std::size_t best, const PointCloud& cloud, Recurse&& recurse) const {
    if (best != kSkip) return best;
    if (cloud.empty()) return 0;
    auto red = linalg::reduce_to_span(cloud, tol_);
    if (red.rank >= 1 && red.rank < cloud.dim()) return recurse(red.reduced);
    return cloud.size();
  }

  ToleranceParams tol_;
  bool early_exit_;
  Deadline deadline_;
};

std::size_t Engine::comb(const PointCloud& cloud, int workers) const {
  const std::size_t d = cloud.dim();
  if (d == 1) return nhd1(column0(cloud), tol_);
  const std::size_t n = cloud.size();
  const std::size_t k = d - 1;
  const auto bounds = zero_bounds(row_norms(cloud), tol_);
  const double* x = cloud.coords().data();

  auto make_body = [&] {
    return [&, rows = std::vector<double>(k * d), scratch = std::vector<double>(k * d),
            normal = std::vector<double>(d), zeros = std::vector<std::size_t>(),
            y = std::vector<double>(k)](std::span<const std::size_t> idx) mutable {
      for (std::size_t q = 0; q < k; ++q) std::copy_n(x + idx[q] * d, d, rows.data() + q * d);
      if (linalg::detail::complement_kernel(rows, k, d, scratch, normal, tol_) < k) return kSkip;

      // Points of I get forced onto the hyperplane after the count.
      SideCount c = count_sides_raw(normal.data(), x, bounds.data(), n, d);
      for (std::size_t q = 0; q < k; ++q) {
        const std::size_t j = idx[q];
        const double s = dot_raw(normal.data(), x + j * d, d);
        if (s > bounds[j]) --c.pos;
        else if (s < -bounds[j]) --c.neg;
      }
      const std::size_t pos = c.pos, neg = c.neg;
      zeros.clear();
      if (n - pos - neg > k) {
        std::size_t t = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (t < k && idx[t] == j) {
            zeros.push_back(j);
            ++t;
            continue;
          }
          const double s = dot_raw(normal.data(), x + j * d, d);
          if (!(s > bounds[j]) && !(s < -bounds[j])) zeros.push_back(j);
        }
      } else {
        zeros.assign(idx.begin(), idx.end());
      }
      std::size_t value = std::min(pos, neg);
      if (zeros.size() > k) {
        PointCloud boundary(k);
        boundary.reserve(zeros.size());
        for (std::size_t j : zeros) {
          for (std::size_t q = 0; q < k; ++q) y[q] = dot_raw(x + idx[q] * d, x + j * d, d);
          boundary.push_back(y);
        }
        value += comb(boundary, 1);
      }
      return value;
    };
  };
  const std::size_t best = min_over_subsets(n, k, loop(workers), make_body);
  return fallback(best, cloud, [&](const PointCloud& c) { return comb(c, 1); });
}

std::size_t Engine::comb2(const PointCloud& cloud, int workers) const {
  const std::size_t d = cloud.dim();
  if (d == 1) return nhd1(column0(cloud), tol_);
  if (d == 2) return nhd2(cloud, tol_);
  const std::size_t n = cloud.size();
  const std::size_t k = d - 2;
  const auto bounds = zero_bounds(row_norms(cloud), tol_);
  const double* x = cloud.coords().data();

  auto make_body = [&] {
    return [&, rows = std::vector<double>(k * d), scratch = std::vector<double>(k * d),
            basis = std::vector<double>(2 * d), planar = std::vector<double>(),
            spanned = std::vector<std::size_t>(),
            y = std::vector<double>(k)](std::span<const std::size_t> idx) mutable {
      for (std::size_t q = 0; q < k; ++q) std::copy_n(x + idx[q] * d, d, rows.data() + q * d);
      if (linalg::detail::complement_kernel(rows, k, d, scratch, basis, tol_) < k) return kSkip;

      planar.clear();
      spanned.clear();
      std::size_t t = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (t < k && idx[t] == j) {
          spanned.push_back(j);
          ++t;
          continue;
        }
        const double* xj = x + j * d;
        const double u = dot_raw(basis.data(), xj, d);
        const double v = dot_raw(basis.data() + d, xj, d);
        if (u * u + v * v <= bounds[j] * bounds[j]) {
          spanned.push_back(j);
        } else {
          planar.push_back(u);
          planar.push_back(v);
        }
      }
      std::size_t value = detail::nhd2_flat(planar, tol_);
      if (spanned.size() > k) {
        PointCloud inner(k);
        inner.reserve(spanned.size());
        for (std::size_t j : spanned) {
          for (std::size_t q = 0; q < k; ++q) y[q] = dot_raw(x + idx[q] * d, x + j * d, d);
          inner.push_back(y);
        }
        value += comb2(inner, 1);
      }
      return value;
    };
  };
  const std::size_t best = min_over_subsets(n, k, loop(workers), make_body);
  return fallback(best, cloud, [&](const PointCloud& c) { return comb2(c, 1); });
}

std::size_t Engine::rec(const PointCloud& cloud, int workers) const {
  const std::size_t d = cloud.dim();
  if (d == 1) return nhd1(column0(cloud), tol_);
  if (d == 2) return nhd2(cloud, tol_);
  const std::size_t n = cloud.size();
  const std::size_t m = d - 1;
  const auto norms = row_norms(cloud);
  const auto bounds = zero_bounds(norms, tol_);
  const double* x = cloud.coords().data();

  auto make_body = [&] {
    return [&, scratch = std::vector<double>(d), basis = std::vector<double>(m * d),
            y = std::vector<double>(m)](std::span<const std::size_t> idx) mutable {
      const std::size_t i = idx[0];
      const double* xi = x + i * d;
      if (linalg::detail::complement_kernel({xi, d}, 1, d, scratch, basis, tol_) < 1) return kSkip;

      std::vector<double> projected;
      projected.reserve((n - 1) * m);
      std::size_t pos = 1, neg = 0;  // x_i itself lies on the positive side
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double* xj = x + j * d;
        double sq = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
          y[r] = dot_raw(basis.data() + r * d, xj, d);
          sq += y[r] * y[r];
        }
        if (sq <= bounds[j] * bounds[j]) {
          switch (classify_sign(dot_raw(xi, xj, d), norms[i] * norms[j], tol_)) {
            case Sign::Positive: ++pos; break;
            case Sign::Negative: ++neg; break;
            case Sign::Zero: break;
          }
        } else {
          projected.insert(projected.end(), y.begin(), y.end());
        }
      }
      const std::size_t collinear = std::min(pos, neg);
      if (m == 2) return detail::nhd2_flat(projected, tol_) + collinear;
      const std::size_t count = projected.size() / m;
      return rec(PointCloud(count, m, std::move(projected)), 1) + collinear;
    };
  };
  const std::size_t best = min_over_subsets(n, 1, loop(workers), make_body);
  return fallback(best, cloud, [&](const PointCloud& c) { return rec(c, 1); });
}

std::size_t Engine::generic(const PointCloud& cloud, std::size_t k, int workers) const {
  const std::size_t n = cloud.size();

  auto make_body = [&] {
    return [&](std::span<const std::size_t> idx) {
      auto sel = make_subset_selection(cloud, idx, tol_);
      if (!sel) return kSkip;
      std::vector<std::size_t> outside;
      outside.reserve(n - sel->closure.size());
      std::size_t t = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (t < sel->closure.size() && sel->closure[t] == j) {
          ++t;
          continue;
        }
        outside.push_back(j);
      }
      std::size_t value = dispatch(linalg::project(cloud.select(outside), sel->complement.a));
      if (sel->closure.size() > k) {
        value += dispatch(linalg::project(cloud.select(sel->closure), sel->span_basis));
      }
      return value;
    };
  };
  const std::size_t best = min_over_subsets(n, k, loop(workers), make_body);
  return fallback(best, cloud, [&](const PointCloud& c) {
    if (c.dim() == 1) return nhd1(column0(c), tol_);
    return generic(c, std::min(k, c.dim() - 1), 1);
  });
}

void check_k(int k, std::size_t d) {
  if (k < 1 || static_cast<std::size_t>(k) >= d) {
    throw Error(ErrorCode::InvalidK, "k must satisfy 1 <= k < d (k=" + std::to_string(k) +
                                         ", d=" + std::to_string(d) + ")");
  }
}

}  // namespace

std::optional<SubsetSelection> make_subset_selection(const PointCloud& cloud,
                                                     std::span<const std::size_t> indices,
                                                     const ToleranceParams& tol) {
  const std::size_t d = cloud.dim();
  const std::size_t k = indices.size();
  if (k == 0 || k >= d) throw Error(ErrorCode::InvalidK, "subset size must satisfy 1 <= k < d");

  std::vector<double> rows(k * d), scratch(k * d), basis((d - k) * d);
  for (std::size_t q = 0; q < k; ++q) {
    const auto xq = cloud[indices[q]];
    std::copy(xq.begin(), xq.end(), rows.begin() + static_cast<std::ptrdiff_t>(q * d));
  }
  if (linalg::detail::complement_kernel(rows, k, d, scratch, basis, tol) < k) return std::nullopt;

  SubsetSelection sel;
  sel.indices.assign(indices.begin(), indices.end());
  std::sort(sel.indices.begin(), sel.indices.end());
  sel.complement.k = k;
  sel.complement.a = linalg::Matrix(d, d - k);
  for (std::size_t c = 0; c < d - k; ++c)
    for (std::size_t r = 0; r < d; ++r) sel.complement.a(r, c) = basis[c * d + r];
  sel.span_basis = linalg::Matrix(d, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = 0; r < d; ++r) sel.span_basis(r, c) = cloud[indices[c]][r];

  for (std::size_t j = 0; j < cloud.size(); ++j) {
    if (std::binary_search(sel.indices.begin(), sel.indices.end(), j)) {
      sel.closure.push_back(j);
      continue;
    }
    const auto xj = cloud[j];
    double sq = 0.0;
    for (std::size_t c = 0; c < d - k; ++c) {
      const double s = dot_raw(basis.data() + c * d, xj.data(), d);
      sq += s * s;
    }
    if (is_negligible(std::sqrt(sq), norm(xj), tol)) sel.closure.push_back(j);
  }
  return sel;
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
#ifdef HDEPTH_HAVE_OPENMP
  return std::max(1, omp_get_max_threads());
#else
  return std::max(1u, std::thread::hardware_concurrency());
#endif
}

Variant auto_variant(std::size_t d, std::size_t n) {
  if (d <= 3) return Variant::Rec;
  if (n <= 100) return Variant::Comb;
  return Variant::Comb2;
}

std::size_t nhd_comb(const PointCloud& cloud, const AlgorithmOptions& opts) {
  return Engine(opts).comb(cloud, resolve_workers(opts.parallel_workers));
}

std::size_t nhd_comb2(const PointCloud& cloud, const AlgorithmOptions& opts) {
  return Engine(opts).comb2(cloud, resolve_workers(opts.parallel_workers));
}

std::size_t nhd_rec(const PointCloud& cloud, const AlgorithmOptions& opts) {
  return Engine(opts).rec(cloud, resolve_workers(opts.parallel_workers));
}

std::size_t nhd_generic_k(const PointCloud& cloud, int k, const AlgorithmOptions& opts) {
  check_k(k, cloud.dim());
  return Engine(opts)
      .generic(cloud, static_cast<std::size_t>(k), resolve_workers(opts.parallel_workers));
}

DepthResult halfspace_depth(const PointCloud& cloud, std::span<const double> z,
                            const AlgorithmOptions& opts) {
  const auto started = std::chrono::steady_clock::now();
  if (cloud.empty()) throw Error(ErrorCode::EmptyCloud, "depth of a point w.r.t. an empty cloud");
  const std::size_t d = cloud.dim();
  if (z.size() != d) {
    throw Error(ErrorCode::DimensionMismatch, "query has dimension " + std::to_string(z.size()) +
                                                  ", data has " + std::to_string(d));
  }
  if (opts.variant == Variant::GenericK) check_k(opts.k, d);

  DepthResult result;
  result.n = cloud.size();
  result.variant = opts.variant;

  const double z_norm = norm(z);
  PointCloud rest(d);
  rest.reserve(cloud.size());
  std::vector<double> diff(d);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto x = cloud[i];
    for (std::size_t c = 0; c < d; ++c) diff[c] = x[c] - z[c];
    if (is_negligible(norm(diff), std::max(norm(x), z_norm), opts.tol)) {
      ++result.zeros_absorbed;
    } else {
      rest.push_back(diff);
    }
  }

  auto finish = [&](std::size_t nhd) {
    result.nhd = nhd + result.zeros_absorbed;
    result.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
  };
  if (rest.empty()) return finish(0);

  auto reduced = linalg::reduce_to_span(rest, opts.tol);
  PointCloud& work = reduced.reduced;
  const std::size_t r = work.dim();
  result.reduced_dim = r;
  if (opts.normalize) {
    for (std::size_t i = 0; i < work.size(); ++i) {
      auto row = work[i];
      const double len = norm(row);
      for (double& v : row) v /= len;
    }
  }

  const Variant variant =
      opts.variant == Variant::Auto ? auto_variant(r, work.size()) : opts.variant;
  result.variant = variant;
  const Engine engine(opts);
  const int workers = resolve_workers(opts.parallel_workers);
  switch (variant) {
    case Variant::Rec:
      result.k = r > 1 ? 1 : 0;
      return finish(engine.rec(work, workers));
    case Variant::Comb:
      result.k = static_cast<int>(r) - 1;
      return finish(engine.comb(work, workers));
    case Variant::Comb2:
      result.k = r > 2 ? static_cast<int>(r) - 2 : 0;
      return finish(engine.comb2(work, workers));
    case Variant::GenericK: {
      if (r == 1) return finish(nhd1(column0(work), opts.tol));
      const std::size_t k = std::min(static_cast<std::size_t>(opts.k), r - 1);
      result.k = static_cast<int>(k);
      return finish(engine.generic(work, k, workers));
    }
    case Variant::Auto: break;
  }
  throw std::logic_error("unreachable variant");
}

}  // namespace hdepth
