#pragma once

// Domain types and sign classification shared by every depth routine.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdepth {

enum class ErrorCode {
  DimensionMismatch,
  ZeroDirection,
  DependentInput,
  OriginPointPresent,
  EmptyCloud,
  InvalidK,
  TooLarge,
  Parse,
  InvalidArgument,
  DeadlineExceeded,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// n points in R^d stored row-major; row i is point i.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(std::size_t dim);
  PointCloud(std::size_t n, std::size_t dim, std::vector<double> coords);
  PointCloud(std::initializer_list<std::initializer_list<double>> rows);
  static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return d_; }
  bool empty() const noexcept { return n_ == 0; }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * d_, d_};
  }
  std::span<double> operator[](std::size_t i) {
    return {coords_.data() + i * d_, d_};
  }

  void push_back(std::span<const double> point);
  void reserve(std::size_t n) { coords_.reserve(n * d_); }
  const std::vector<double>& coords() const noexcept { return coords_; }

  /// Copy of the points whose indices are listed, in the given order.
  PointCloud select(std::span<const std::size_t> indices) const;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> coords_;
};

enum class ScaleMode { Absolute, Relative };

struct ToleranceParams {
  double eps_zero = 1e-10;
  ScaleMode scale_mode = ScaleMode::Relative;
};

enum class Sign : int { Negative = -1, Zero = 0, Positive = 1 };

/// Half-width of the dead zone around 0 for a value of magnitude `scale`.
inline double zero_bound(double scale, const ToleranceParams& tol) noexcept {
  return tol.scale_mode == ScaleMode::Relative ? tol.eps_zero * scale : tol.eps_zero;
}

inline Sign sign_with_bound(double s, double bound) noexcept {
  if (s > bound) return Sign::Positive;
  if (s < -bound) return Sign::Negative;
  return Sign::Zero;
}

/// Sign of s with a dead zone around 0. In relative mode the dead zone is
/// eps_zero * scale, where scale is typically |p| * |x| for s = p.x; in
/// absolute mode it is eps_zero.
inline Sign classify_sign(double s, double scale, const ToleranceParams& tol) noexcept {
  return sign_with_bound(s, zero_bound(scale, tol));
}

/// True when a vector of norm `norm` should be treated as the null vector,
/// `reference` being the magnitude it is compared against in relative mode.
bool is_negligible(double norm, double reference, const ToleranceParams& tol);

struct DirectionCounts {
  std::size_t n_plus = 0;
  std::size_t n_zero = 0;
  std::size_t n_minus = 0;
  std::vector<std::size_t> plus;
  std::vector<std::size_t> zero;
  std::vector<std::size_t> minus;
};

/// Partitions the cloud by the sign of p.x_i. Throws ZeroDirection for p ~ 0.
DirectionCounts count_sides(const PointCloud& cloud, std::span<const double> p,
                            const ToleranceParams& tol = {});

enum class Variant { Rec, Comb2, Comb, GenericK, Auto };

std::string to_string(Variant v, int k = 0);

struct DepthResult {
  std::size_t nhd = 0;
  std::size_t n = 0;
  std::size_t zeros_absorbed = 0;
  Variant variant = Variant::Auto;
  int k = 0;              // dimension-reduction step actually used; 0 if no dispatch
  std::size_t reduced_dim = 0;
  double elapsed = 0.0;  // seconds

  double hd() const noexcept {
    return n == 0 ? 0.0 : static_cast<double>(nhd) / static_cast<double>(n);
  }
};

double dot(std::span<const double> a, std::span<const double> b) noexcept;
double norm(std::span<const double> a) noexcept;

}  // namespace hdepth
