#include "hdepth/core.hpp"

#include <cmath>

namespace hdepth {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::DependentInput: return "DependentInput";
    case ErrorCode::OriginPointPresent: return "OriginPointPresent";
    case ErrorCode::EmptyCloud: return "EmptyCloud";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DeadlineExceeded: return "DeadlineExceeded";
  }
  return "Unknown";
}

PointCloud::PointCloud(std::size_t dim) : d_(dim) {
  if (dim == 0) throw Error(ErrorCode::DimensionMismatch, "point dimension must be >= 1");
}

PointCloud::PointCloud(std::size_t n, std::size_t dim, std::vector<double> coords)
    : n_(n), d_(dim), coords_(std::move(coords)) {
  if (dim == 0) throw Error(ErrorCode::DimensionMismatch, "point dimension must be >= 1");
  if (coords_.size() != n * dim) {
    throw Error(ErrorCode::DimensionMismatch, "coordinate count is not n*d");
  }
}

PointCloud::PointCloud(std::initializer_list<std::initializer_list<double>> rows) {
  for (const auto& r : rows) {
    if (d_ == 0) {
      if (r.size() == 0) throw Error(ErrorCode::DimensionMismatch, "point dimension must be >= 1");
      d_ = r.size();
    }
    push_back(std::span<const double>(r.begin(), r.size()));
  }
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw Error(ErrorCode::EmptyCloud, "no rows to infer the dimension from");
  PointCloud cloud(rows.front().size());
  cloud.reserve(rows.size());
  for (const auto& r : rows) cloud.push_back(r);
  return cloud;
}

void PointCloud::push_back(std::span<const double> point) {
  if (point.size() != d_) {
    throw Error(ErrorCode::DimensionMismatch,
                "point has dimension " + std::to_string(point.size()) + ", cloud has " +
                    std::to_string(d_));
  }
  coords_.insert(coords_.end(), point.begin(), point.end());
  ++n_;
}

PointCloud PointCloud::select(std::span<const std::size_t> indices) const {
  PointCloud out(d_);
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back((*this)[i]);
  return out;
}

bool is_negligible(double norm_value, double reference, const ToleranceParams& tol) {
  return classify_sign(norm_value, reference, tol) == Sign::Zero;
}

DirectionCounts count_sides(const PointCloud& cloud, std::span<const double> p,
                            const ToleranceParams& tol) {
  if (p.size() != cloud.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "direction dimension does not match the cloud");
  }
  const double p_norm = norm(p);
  if (p_norm <= tol.eps_zero) throw Error(ErrorCode::ZeroDirection, "direction is the null vector");

  DirectionCounts out;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto x = cloud[i];
    switch (classify_sign(dot(p, x), p_norm * norm(x), tol)) {
      case Sign::Positive: out.plus.push_back(i); break;
      case Sign::Zero: out.zero.push_back(i); break;
      case Sign::Negative: out.minus.push_back(i); break;
    }
  }
  out.n_plus = out.plus.size();
  out.n_zero = out.zero.size();
  out.n_minus = out.minus.size();
  return out;
}

std::string to_string(Variant v, int k) {
  switch (v) {
    case Variant::Rec: return "rec";
    case Variant::Comb2: return "comb2";
    case Variant::Comb: return "comb";
    case Variant::GenericK: return "k=" + std::to_string(k);
    case Variant::Auto: return "auto";
  }
  return "unknown";
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) noexcept { return std::sqrt(dot(a, a)); }

}  // namespace hdepth
