#pragma once

// Small dense linear algebra: rank, orthonormal span/complement bases and
// projections. Sizes are tiny (d <= ~10), so everything is plain loops.

#include <cstddef>
#include <span>
#include <vector>

#include "hdepth/core.hpp"

namespace hdepth::linalg {

/// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n);
  static Matrix from_columns(const std::vector<std::vector<double>>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::vector<double> column(std::size_t c) const;

  Matrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct RankBasis {
  std::size_t rank = 0;
  Matrix basis;  // rank x d, orthonormal rows spanning the input vectors
};

/// Gauss-Jordan elimination with largest-magnitude pivoting followed by
/// Gram-Schmidt on the surviving rows. A pivot counts as nonzero when it
/// exceeds eps_zero times the largest initial row norm.
RankBasis rank_and_basis(const PointCloud& vectors, const ToleranceParams& tol = {});

bool is_linearly_independent(const PointCloud& vectors, const ToleranceParams& tol = {});

/// Orthonormal basis of span(selected)^perp, one basis vector per column
/// (d x (d-k)).
struct ComplementBasis {
  Matrix a;
  std::size_t k = 0;
};

ComplementBasis orthogonal_complement(const PointCloud& selected, const ToleranceParams& tol = {});

/// y_i = B^T x_i for a d x m basis B.
PointCloud project(const PointCloud& cloud, const Matrix& basis);

struct SpanReduction {
  PointCloud reduced;
  std::size_t rank = 0;
};

/// Coordinates of the cloud in an orthonormal basis of its linear span.
/// Returns the cloud unchanged when it already spans R^d.
SpanReduction reduce_to_span(const PointCloud& cloud, const ToleranceParams& tol = {});

namespace detail {

/// Allocation-free kernel behind orthogonal_complement. `rows` holds k
/// vectors of length d back to back; on return `out` holds the d-k
/// orthonormal complement vectors back to back. `scratch` must hold k*d
/// doubles. Returns the rank found.
std::size_t complement_kernel(std::span<const double> rows, std::size_t k, std::size_t d,
                              std::span<double> scratch, std::span<double> out,
                              const ToleranceParams& tol);

}  // namespace detail

}  // namespace hdepth::linalg
