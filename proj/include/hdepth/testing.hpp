#pragma once

// Reference oracle and reproducible data generators. The oracle shares
// nothing with the production kernels except sign classification.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "hdepth/core.hpp"

namespace hdepth::testing {

/// Largest C(n, d-1) the oracle accepts before throwing TooLarge.
inline constexpr double kOracleSubsetLimit = 2e5;

/// Brute-force nHD(0 | cloud) for an origin-free cloud. Enumerates every
/// hyperplane through 0 and d-1 data points (normals from cofactor
/// expansion), counts the open side for both orientations and recurses on
/// the points inside the hyperplane. In the plane the result is
/// cross-checked against 4n symbolically perturbed directions.
std::size_t oracle_nhd(const PointCloud& cloud, const ToleranceParams& tol = {});

/// Oracle depth of z: translation and absorption of points equal to z are
/// redone here, then oracle_nhd on the rest.
std::size_t oracle_depth(const PointCloud& cloud, std::span<const double> z,
                         const ToleranceParams& tol = {});

/// nHD(0 | cloud) in the plane from 4n symbolically perturbed directions.
std::size_t oracle_nhd2_directions(const PointCloud& cloud, const ToleranceParams& tol = {});

/// SplitMix64. Fixed algorithm, so sequences are identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal by the Box-Muller transform (pairs are cached).
  double normal();

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

enum class Distribution { StandardNormal, GridUniform };

std::string to_string(Distribution dist);
Distribution parse_distribution(const std::string& name);

struct GeneratorSpec {
  Distribution distribution = Distribution::StandardNormal;
  std::size_t d = 2;
  std::size_t n = 10;
  std::uint64_t seed = 0;
};

/// StandardNormal: i.i.d. N(0,1) coordinates. GridUniform: i.i.d. uniform
/// on {-2,-1,0,1,2}. Deterministic in the spec.
PointCloud generate(const GeneratorSpec& spec);

}  // namespace hdepth::testing
