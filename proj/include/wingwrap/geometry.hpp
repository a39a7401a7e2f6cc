#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace wingwrap {

using Vec2 = Eigen::Vector2d;

inline Vec2 unit_from_angle(double a) { return Vec2(std::cos(a), std::sin(a)); }

/// 90-degree counterclockwise rotation; equals d(unit_from_angle)/da.
inline Vec2 perp(const Vec2& v) { return Vec2(-v.y(), v.x()); }

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Wraps an angle difference into (-pi, pi].
inline double wrap_to_pi(double a) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  a = std::fmod(a, kTwoPi);
  if (a <= -M_PI) a += kTwoPi;
  if (a > M_PI) a -= kTwoPi;
  return a;
}

/// Closest point on segment [p0, p1] to a query point.
inline Vec2 closest_point_on_segment(const Vec2& p0, const Vec2& p1, const Vec2& query) {
  const Vec2 d = p1 - p0;
  const double len2 = d.squaredNorm();
  if (len2 <= 0.0) return p0;
  double s = (query - p0).dot(d) / len2;
  s = std::clamp(s, 0.0, 1.0);
  return p0 + s * d;
}

}  // namespace wingwrap
