#pragma once

// Helpers shared by the test binaries.

#include <cmath>
#include <cstdint>
#include <vector>

#include "hdepth/core.hpp"
#include "hdepth/testing.hpp"

namespace hdepth::test {

inline PointCloud sample(testing::Distribution dist, std::size_t d, std::size_t n,
                         std::uint64_t seed) {
  return testing::generate({dist, d, n, seed});
}

/// Random d x d matrix with singular values kept away from zero: a product
/// of a random orthogonal matrix and a diagonal scaling in [0.5, 2].
inline std::vector<double> well_conditioned_matrix(std::size_t d, testing::SplitMix64& rng) {
  std::vector<double> q(d * d);
  for (double& v : q) v = rng.normal();
  // Modified Gram-Schmidt on the rows.
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t s = 0; s < r; ++s) {
      double proj = 0.0;
      for (std::size_t c = 0; c < d; ++c) proj += q[r * d + c] * q[s * d + c];
      for (std::size_t c = 0; c < d; ++c) q[r * d + c] -= proj * q[s * d + c];
    }
    double len = 0.0;
    for (std::size_t c = 0; c < d; ++c) len += q[r * d + c] * q[r * d + c];
    len = std::sqrt(len);
    for (std::size_t c = 0; c < d; ++c) q[r * d + c] /= len;
  }
  for (std::size_t r = 0; r < d; ++r) {
    const double scale = 0.5 + 1.5 * rng.uniform();
    for (std::size_t c = 0; c < d; ++c) q[r * d + c] *= scale;
  }
  return q;
}

/// y = M x + b for every point.
inline PointCloud affine_image(const PointCloud& cloud, const std::vector<double>& m,
                               const std::vector<double>& b) {
  const std::size_t d = cloud.dim();
  PointCloud out(d);
  out.reserve(cloud.size());
  std::vector<double> y(d);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto x = cloud[i];
    for (std::size_t r = 0; r < d; ++r) {
      double s = b[r];
      for (std::size_t c = 0; c < d; ++c) s += m[r * d + c] * x[c];
      y[r] = s;
    }
    out.push_back(y);
  }
  return out;
}

inline std::vector<double> affine_point(std::span<const double> x, const std::vector<double>& m,
                                        const std::vector<double>& b) {
  const std::size_t d = x.size();
  std::vector<double> y(b);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) y[r] += m[r * d + c] * x[c];
  }
  return y;
}

/// Uniform rotation of the plane by angle t.
inline PointCloud rotate2(const PointCloud& cloud, double t) {
  PointCloud out(2);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto x = cloud[i];
    const double p[2] = {std::cos(t) * x[0] - std::sin(t) * x[1],
                         std::sin(t) * x[0] + std::cos(t) * x[1]};
    out.push_back(p);
  }
  return out;
}

}  // namespace hdepth::test
