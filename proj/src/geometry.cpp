#include "thetagraph/geometry.hpp"

#include <cmath>
#include <numbers>

namespace thetagraph {

double norm(const Point &v) { return std::hypot(v.x, v.y); }

Point unit_at_turn(long num, long den) {
  if (den <= 0) {
    throw GeometryError("unit_at_turn: denominator must be positive");
  }
  num %= den;
  if (num < 0) {
    num += den;
  }
  if ((4 * num) % den == 0) {
    switch ((4 * num) / den) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

ConeGeometry::ConeGeometry(int k) : k_(k), theta_(2.0 * std::numbers::pi / k) {
  if (k < 2) {
    throw GeometryError("cone count k must be at least 2");
  }
}

void ConeGeometry::check_cone(int i) const {
  if (i < 1 || i > k_) {
    throw GeometryError("cone index " + std::to_string(i) + " outside 1.." + std::to_string(k_));
  }
}

double ConeGeometry::axis_angle(int i) const {
  check_cone(i);
  return (2 * i - 1) * std::numbers::pi / k_;
}

Point ConeGeometry::axis(int i) const {
  check_cone(i);
  return unit_at_turn(2L * i - 1, 2L * k_);
}

Point ConeGeometry::boundary(int j) const { return unit_at_turn(j, k_); }

void check_finite(const Point &p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw GeometryError("point coordinates must be finite");
  }
}

int cone_index(const Point &u, const Point &w, const ConeGeometry &geom) {
  // Adding +0.0 turns a negative zero into a positive one, so a direction
  // straight along -x reports angle pi rather than -pi.
  const double dx = (w.x - u.x) + 0.0;
  const double dy = (w.y - u.y) + 0.0;
  if (dx == 0.0 && dy == 0.0) {
    throw GeometryError("degenerate pair");
  }
  // Work in turns: dividing by 2*pi and wrapping by +1 keeps quarter-turn
  // directions exact.
  double turns = std::atan2(dy, dx) / (2.0 * std::numbers::pi);
  if (turns < 0.0) {
    turns += 1.0;
  }
  const int k = geom.k();
  auto index = static_cast<int>(std::floor(turns * k));
  if (index >= k) {
    index = k - 1;
  }
  return index + 1;
}

double projection_distance(const Point &u, const Point &w, int i, const ConeGeometry &geom) {
  if (cone_index(u, w, geom) != i) {
    throw GeometryError("cone mismatch");
  }
  return dot(w - u, geom.axis(i));
}

std::vector<Point> clip_half_plane(const std::vector<Point> &polygon, const Point &normal, double offset) {
  std::vector<Point> out;
  const std::size_t n = polygon.size();
  out.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Point &p = polygon[i];
    const Point &q = polygon[(i + 1) % n];
    const double fp = dot(normal, p) - offset;
    const double fq = dot(normal, q) - offset;
    if (fp >= 0.0) {
      out.push_back(p);
    }
    if ((fp >= 0.0) != (fq >= 0.0)) {
      const double s = fp / (fp - fq);
      out.push_back({p.x + s * (q.x - p.x), p.y + s * (q.y - p.y)});
    }
  }
  return out;
}

double polygon_area(const std::vector<Point> &polygon) {
  double twice = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(polygon[i], polygon[(i + 1) % n]);
  }
  return 0.5 * std::abs(twice);
}

} // namespace thetagraph
