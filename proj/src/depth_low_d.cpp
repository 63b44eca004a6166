#include "hdepth/depth_low_d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

namespace hdepth {

std::size_t nhd1(std::span<const double> values, const ToleranceParams& tol) {
  std::size_t pos = 0, neg = 0, zero = 0;
  for (double v : values) {
    switch (classify_sign(v, std::abs(v), tol)) {
      case Sign::Positive: ++pos; break;
      case Sign::Negative: ++neg; break;
      case Sign::Zero: ++zero; break;
    }
  }
  return std::min(pos, neg) + zero;
}

namespace {

struct Direction {
  double x, y, angle;
};

double cross(const Direction& a, const Direction& b) { return a.x * b.y - a.y * b.x; }
double dot(const Direction& a, const Direction& b) { return a.x * b.x + a.y * b.y; }

}  // namespace

// The depth of 0 is n minus the largest number of points inside an open
// halfplane bounded by a line through 0. That maximum is attained on an
// arc (a, a + pi] or [a - pi, a) with a a data direction, so for every
// direction group g with A_g points strictly counter-clockwise within pi
// and Anti_g points exactly antipodal, the candidate depths are
// A_g + Anti_g and n - A_g - Anti_g.
std::size_t nhd2(const PointCloud& cloud, const ToleranceParams& tol) {
  if (cloud.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "nhd2 needs bivariate data");
  return detail::nhd2_flat(cloud.coords(), tol);
}

namespace detail {

std::size_t nhd2_flat(std::span<const double> xy, const ToleranceParams& tol) {
  const std::size_t n = xy.size() / 2;
  if (n == 0) return 0;

  std::vector<Direction> dirs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = xy[2 * i], y = xy[2 * i + 1];
    const double r = std::hypot(x, y);
    if (r == 0.0) throw Error(ErrorCode::OriginPointPresent, "nhd2 input contains the origin");
    double a = std::atan2(y, x);
    if (a < 0) a += 2 * std::numbers::pi;
    dirs[i] = {x / r, y / r, a};
  }
  std::sort(dirs.begin(), dirs.end(),
            [](const Direction& a, const Direction& b) { return a.angle < b.angle; });

  auto same = [&](const Direction& a, const Direction& b) {
    return classify_sign(cross(a, b), 1.0, tol) == Sign::Zero && dot(a, b) > 0;
  };

  // Start the sweep at a group boundary so no group wraps around 2*pi.
  std::size_t start = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!same(dirs[(i + n - 1) % n], dirs[i])) {
      start = i;
      break;
    }
  }
  if (start == n) return 0;  // one direction only
  std::rotate(dirs.begin(), dirs.begin() + static_cast<std::ptrdiff_t>(start), dirs.end());

  std::vector<Direction> rep;
  std::vector<std::size_t> count;
  for (const auto& d : dirs) {
    if (!rep.empty() && same(rep.back(), d)) {
      ++count.back();
    } else {
      rep.push_back(d);
      count.push_back(1);
    }
  }
  const std::size_t groups = rep.size();
  // prefix[i] = points in groups [0, i) of the doubled sequence
  std::vector<std::size_t> prefix(2 * groups + 1, 0);
  for (std::size_t i = 0; i < 2 * groups; ++i) prefix[i + 1] = prefix[i] + count[i % groups];

  std::size_t best = n;
  std::size_t end = 1;
  for (std::size_t g = 0; g < groups; ++g) {
    end = std::max(end, g + 1);
    while (end < g + groups &&
           classify_sign(cross(rep[g], rep[end % groups]), 1.0, tol) == Sign::Positive) {
      ++end;
    }
    const std::size_t inside = prefix[end] - prefix[g + 1];
    std::size_t anti = 0;
    if (end < g + groups) {
      const auto& h = rep[end % groups];
      if (classify_sign(cross(rep[g], h), 1.0, tol) == Sign::Zero && dot(rep[g], h) < 0) {
        anti = count[end % groups];
      }
    }
    const std::size_t c = inside + anti;
    best = std::min({best, c, n - c});
    if (best == 0) break;
  }
  return best;
}

}  // namespace detail

}  // namespace hdepth
