#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace georoute {

class GeometryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr bool operator==(const Vec2&) const = default;

  double norm() const { return std::hypot(x, y); }
  constexpr double norm2() const { return x * x + y * y; }
  constexpr bool is_zero() const { return x == 0.0 && y == 0.0; }
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/// Signed angle kept in [-pi, pi). Counter-clockwise is positive.
class Angle {
 public:
  constexpr Angle() = default;
  explicit Angle(double radians) : radians_(normalize(radians)) {}

  double radians() const { return radians_; }

  Angle operator+(Angle o) const { return Angle(radians_ + o.radians_); }
  Angle operator-(Angle o) const { return Angle(radians_ - o.radians_); }
  Angle operator-() const { return Angle(-radians_); }

  static double normalize(double radians);

 private:
  double radians_ = 0.0;
};

struct Segment {
  Vec2 a;
  Vec2 b;

  Segment(Vec2 a_, Vec2 b_);
  double length() const { return distance(a, b); }
};

enum class Compass { NE, NW, SE, SW };

const char* to_string(Compass c);

/// The angle in [-pi, pi) that rotates `from` onto the ray of `to`.
/// Throws GeometryError if either vector is zero.
Angle angle_from_to(Vec2 from, Vec2 to);

Vec2 rotate(Vec2 v, Angle gamma);

/// Quadrant of `alpha` with the destination direction as north.
Compass compass_of(Angle alpha);

/// Compass reading at `p` for a message that arrived from `p_prev` and is
/// bound for `p_dest`.
Compass compass(Vec2 p, Vec2 p_prev, Vec2 p_dest);

/// Orientation of c relative to the directed line a->b: +1 left, -1 right,
/// 0 collinear (within a fixed 1e-12 tolerance on the cross product).
int orientation(Vec2 a, Vec2 b, Vec2 c);

/// True when the closed segments share at least one point. Endpoint contact
/// and collinear overlap both count.
bool segments_intersect(const Segment& s1, const Segment& s2);

/// True when the segments cross at a single interior point of both.
bool segments_cross_strictly(const Segment& s1, const Segment& s2);

/// Intersection point of the supporting lines, if the segments intersect at
/// exactly one point. Returns false for parallel or disjoint segments.
bool segment_intersection_point(const Segment& s1, const Segment& s2, Vec2& out);

}  // namespace georoute
