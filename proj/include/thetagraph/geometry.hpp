#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetagraph {

/// Raised when an argument violates an operation's precondition.
class GeometryError : public std::invalid_argument {
public:
  explicit GeometryError(const std::string &what) : std::invalid_argument(what) {}
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point &, const Point &) = default;
};

using PointSet = std::vector<Point>;
using PointIndex = std::size_t;

inline Point operator-(const Point &a, const Point &b) { return {a.x - b.x, a.y - b.y}; }
inline double dot(const Point &a, const Point &b) { return a.x * b.x + a.y * b.y; }
/// z-component of a x b; positive when b is counterclockwise of a.
inline double cross(const Point &a, const Point &b) { return a.x * b.y - a.y * b.x; }
double norm(const Point &v);

/// Unit vector at angle 2*pi*num/den. Exact when the angle is a multiple of pi/2.
Point unit_at_turn(long num, long den);

/// The k equal cones C_1..C_k around the origin. Cone i covers the
/// half-open angular interval [2*pi*(i-1)/k, 2*pi*i/k); its axis bisects it.
class ConeGeometry {
public:
  explicit ConeGeometry(int k);

  int k() const { return k_; }
  /// Apex angle 2*pi/k.
  double theta() const { return theta_; }
  /// (2i-1)*pi/k, in radians.
  double axis_angle(int i) const;
  Point axis(int i) const;
  /// Direction of the ray at angle 2*pi*j/k. Cone i lies between boundary(i-1)
  /// (inclusive) and boundary(i) (exclusive).
  Point boundary(int j) const;

private:
  void check_cone(int i) const;

  int k_;
  double theta_;
};

/// Index in 1..k of the cone of u that contains w.
int cone_index(const Point &u, const Point &w, const ConeGeometry &geom);

/// Length of the orthogonal projection of w - u onto the axis of cone i.
double projection_distance(const Point &u, const Point &w, int i, const ConeGeometry &geom);

/// A chosen neighbour e(source, cone). `height` is the projection distance for
/// theta graphs and the Euclidean distance for Yao graphs.
struct DirectedEdge {
  PointIndex source = 0;
  PointIndex target = 0;
  int cone = 0;
  double height = 0.0;

  friend bool operator==(const DirectedEdge &, const DirectedEdge &) = default;
};

/// Throws GeometryError if a coordinate is NaN or infinite.
void check_finite(const Point &p);

/// Sutherland-Hodgman step: the part of convex `polygon` where dot(normal, p) >= offset.
std::vector<Point> clip_half_plane(const std::vector<Point> &polygon, const Point &normal, double offset);

/// Unsigned area of a simple polygon.
double polygon_area(const std::vector<Point> &polygon);

} // namespace thetagraph
