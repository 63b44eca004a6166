#pragma once

// Exact halfspace depth by dimension reduction over k-subsets of the data.
//
// For an origin-free cloud spanning R^d and any 1 <= k < d,
//
//   nHD(0 | X) = min over linearly independent k-subsets I of
//                nHD(0 | A_I' X_{I*^c}) + nHD(0 | P_I' X_{I*})
//
// where A_I is a basis of span(X_I)^perp, P_I = [x_i]_{i in I} and I* holds
// every index whose point lies in span(X_I). The variants below differ only
// in k: Rec uses k = 1, Comb2 k = d-2 and Comb k = d-1.

#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hdepth/core.hpp"
#include "hdepth/linalg.hpp"

namespace hdepth {

struct AlgorithmOptions {
  Variant variant = Variant::Auto;
  int k = 0;  // only read for Variant::GenericK
  /// Stop the subset loop once the running minimum hits 0.
  bool early_exit = false;
  /// Scale every (translated, reduced) point to unit norm before dispatch.
  bool normalize = false;
  ToleranceParams tol;
  /// Workers for the outermost subset loop; 0 picks the hardware default.
  int parallel_workers = 1;
  /// Abort with DeadlineExceeded once this instant has passed.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// A linearly independent index set I together with its closure I* and
/// the bases used to split the cloud.
struct SubsetSelection {
  std::vector<std::size_t> indices;    // I, ascending
  std::vector<std::size_t> closure;    // I*, ascending, superset of I
  linalg::ComplementBasis complement;  // A_I, d x (d-k), orthonormal columns
  linalg::Matrix span_basis;           // P_I, d x k, the selected points
};

/// Builds the selection for `indices`; nullopt when the points are dependent.
std::optional<SubsetSelection> make_subset_selection(const PointCloud& cloud,
                                                     std::span<const std::size_t> indices,
                                                     const ToleranceParams& tol = {});

/// Depth of z: translates by z, absorbs points equal to z, reduces to the
/// span of the rest and dispatches to the chosen variant. hd() is taken
/// relative to the original number of points.
DepthResult halfspace_depth(const PointCloud& cloud, std::span<const double> z,
                            const AlgorithmOptions& opts = {});

// The kernels below compute nHD(0 | cloud) for an origin-free cloud that
// spans R^d (rank-deficient input is reduced to its span as a fallback).

std::size_t nhd_comb(const PointCloud& cloud, const AlgorithmOptions& opts = {});
std::size_t nhd_comb2(const PointCloud& cloud, const AlgorithmOptions& opts = {});
std::size_t nhd_rec(const PointCloud& cloud, const AlgorithmOptions& opts = {});
/// Throws InvalidK unless 1 <= k < d.
std::size_t nhd_generic_k(const PointCloud& cloud, int k, const AlgorithmOptions& opts = {});

/// Static choice between Rec, Comb and Comb2 from (d, n). A rough rule of
/// thumb from single-core timings, not a tuned hybrid.
Variant auto_variant(std::size_t d, std::size_t n);

/// Resolved worker count for a request (0 = hardware default).
int resolve_workers(int requested);

}  // namespace hdepth
