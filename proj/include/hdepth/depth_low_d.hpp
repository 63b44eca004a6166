#pragma once

#include <cstddef>
#include <span>

#include "hdepth/core.hpp"

namespace hdepth {

/// Integer depth of 0 w.r.t. univariate data:
/// min(#{v > 0}, #{v < 0}) + #{v = 0}. O(n).
std::size_t nhd1(std::span<const double> values, const ToleranceParams& tol = {});

/// Integer depth of 0 w.r.t. a bivariate cloud without origin points,
/// O(n log n) angular sweep. Points sharing a direction are swept as one
/// group and antipodal groups are detected exactly, so ties are handled.
std::size_t nhd2(const PointCloud& cloud, const ToleranceParams& tol = {});

namespace detail {

/// nhd2 on interleaved (x, y) coordinates.
std::size_t nhd2_flat(std::span<const double> xy, const ToleranceParams& tol);

}  // namespace detail

}  // namespace hdepth
