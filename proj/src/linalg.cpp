#include "hdepth/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace hdepth::linalg {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_columns(const std::vector<std::vector<double>>& columns) {
  if (columns.empty()) return {};
  Matrix m(columns.front().size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != m.rows()) {
      throw Error(ErrorCode::DimensionMismatch, "columns have different lengths");
    }
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = columns[c][r];
  }
  return m;
}

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

namespace {

double pivot_threshold(std::span<const double> m, std::size_t rows, std::size_t cols,
                       const ToleranceParams& tol) {
  if (tol.scale_mode == ScaleMode::Absolute) return tol.eps_zero;
  double max_norm = 0.0;
  for (std::size_t r = 0; r < rows; ++r) max_norm = std::max(max_norm, norm(m.subspan(r * cols, cols)));
  return tol.eps_zero * max_norm;
}

// In-place Gauss-Jordan on a rows x cols row-major block. On return the
// first `rank` rows are in reduced echelon form with unit pivots in
// pivot_cols[0..rank). Pivot is the largest remaining entry in magnitude.
std::size_t gauss_jordan(std::span<double> m, std::size_t rows, std::size_t cols, double threshold,
                         std::span<std::size_t> pivot_cols) {
  std::size_t rank = 0;
  // column_used[c] flags are kept in pivot_cols order; cols <= small, so a
  // linear scan is enough.
  auto used = [&](std::size_t c) {
    for (std::size_t i = 0; i < rank; ++i)
      if (pivot_cols[i] == c) return true;
    return false;
  };
  while (rank < rows && rank < cols) {
    double best = 0.0;
    std::size_t br = rank, bc = cols;
    for (std::size_t r = rank; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        const double v = std::abs(m[r * cols + c]);
        if (v > best && !used(c)) {
          best = v;
          br = r;
          bc = c;
        }
      }
    }
    if (bc == cols || best <= threshold) break;
    if (br != rank) {
      for (std::size_t c = 0; c < cols; ++c) std::swap(m[br * cols + c], m[rank * cols + c]);
    }
    double* prow = m.data() + rank * cols;
    const double inv = 1.0 / prow[bc];
    for (std::size_t c = 0; c < cols; ++c) prow[c] *= inv;
    prow[bc] = 1.0;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      double* row = m.data() + r * cols;
      const double f = row[bc];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < cols; ++c) row[c] -= f * prow[c];
      row[bc] = 0.0;
    }
    pivot_cols[rank] = bc;
    ++rank;
  }
  return rank;
}

// Modified Gram-Schmidt, applied twice, over `count` vectors of length d.
// Vectors that collapse are left as zero; returns how many survived.
std::size_t orthonormalize(std::span<double> v, std::size_t count, std::size_t d) {
  std::size_t kept = 0;
  for (std::size_t i = 0; i < count; ++i) {
    double* vi = v.data() + i * d;
    const double original = norm({vi, d});
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < kept; ++j) {
        const double* vj = v.data() + j * d;
        double s = 0.0;
        for (std::size_t c = 0; c < d; ++c) s += vi[c] * vj[c];
        for (std::size_t c = 0; c < d; ++c) vi[c] -= s * vj[c];
      }
    }
    const double nv = norm({vi, d});
    if (nv <= 1e-14 * original || nv == 0.0) continue;
    double* dst = v.data() + kept * d;
    for (std::size_t c = 0; c < d; ++c) dst[c] = vi[c] / nv;
    ++kept;
  }
  return kept;
}

}  // namespace

RankBasis rank_and_basis(const PointCloud& vectors, const ToleranceParams& tol) {
  const std::size_t m = vectors.size();
  const std::size_t d = vectors.dim();
  RankBasis out;
  if (m == 0) {
    out.basis = Matrix(0, d);
    return out;
  }
  std::vector<double> work(vectors.coords());
  std::vector<std::size_t> pivots(std::min(m, d));
  const double threshold = pivot_threshold(work, m, d, tol);
  const std::size_t rank = gauss_jordan(work, m, d, threshold, pivots);
  const std::size_t kept = orthonormalize(work, rank, d);
  out.rank = rank;
  out.basis = Matrix(kept, d);
  std::copy_n(work.begin(), kept * d, out.basis.row(0).data());
  return out;
}

bool is_linearly_independent(const PointCloud& vectors, const ToleranceParams& tol) {
  if (vectors.empty()) return true;
  if (vectors.size() > vectors.dim()) return false;
  return rank_and_basis(vectors, tol).rank == vectors.size();
}

namespace detail {

std::size_t complement_kernel(std::span<const double> rows, std::size_t k, std::size_t d,
                              std::span<double> scratch, std::span<double> out,
                              const ToleranceParams& tol) {
  std::copy_n(rows.begin(), k * d, scratch.begin());
  std::size_t pivots[64];
  const double threshold = pivot_threshold(scratch, k, d, tol);
  const std::size_t rank = gauss_jordan(scratch, k, d, threshold, {pivots, std::min<std::size_t>(k, 64)});
  if (rank < k) return rank;

  std::size_t v = 0;
  for (std::size_t f = 0; f < d; ++f) {
    bool is_pivot = false;
    for (std::size_t i = 0; i < rank; ++i) is_pivot |= pivots[i] == f;
    if (is_pivot) continue;
    double* vec = out.data() + v * d;
    std::fill_n(vec, d, 0.0);
    vec[f] = 1.0;
    for (std::size_t i = 0; i < rank; ++i) vec[pivots[i]] = -scratch[i * d + f];
    ++v;
  }
  orthonormalize(out, d - k, d);
  return rank;
}

}  // namespace detail

ComplementBasis orthogonal_complement(const PointCloud& selected, const ToleranceParams& tol) {
  const std::size_t k = selected.size();
  const std::size_t d = selected.dim();
  if (k == 0 || k >= d) {
    throw Error(ErrorCode::DependentInput, "complement needs 1 <= k < d input vectors");
  }
  std::vector<double> scratch(k * d);
  std::vector<double> rows_out((d - k) * d);
  const std::size_t rank =
      detail::complement_kernel(selected.coords(), k, d, scratch, rows_out, tol);
  if (rank < k) throw Error(ErrorCode::DependentInput, "input vectors are linearly dependent");
  ComplementBasis out;
  out.k = k;
  out.a = Matrix(d, d - k);
  for (std::size_t j = 0; j < d - k; ++j)
    for (std::size_t r = 0; r < d; ++r) out.a(r, j) = rows_out[j * d + r];
  return out;
}

PointCloud project(const PointCloud& cloud, const Matrix& basis) {
  if (basis.rows() != cloud.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "basis rows must equal the cloud dimension");
  }
  const std::size_t m = basis.cols();
  if (m == 0) throw Error(ErrorCode::DimensionMismatch, "basis has no columns");
  std::vector<double> coords(cloud.size() * m, 0.0);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto x = cloud[i];
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < x.size(); ++r) s += basis(r, j) * x[r];
      coords[i * m + j] = s;
    }
  }
  return PointCloud(cloud.size(), m, std::move(coords));
}

SpanReduction reduce_to_span(const PointCloud& cloud, const ToleranceParams& tol) {
  const auto rb = rank_and_basis(cloud, tol);
  if (rb.rank == cloud.dim() || rb.rank == 0) return {cloud, rb.rank};
  return {project(cloud, rb.basis.transposed()), rb.rank};
}

}  // namespace hdepth::linalg
