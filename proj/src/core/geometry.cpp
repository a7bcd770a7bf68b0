#include "geometry.hpp"

#include <algorithm>

namespace georoute {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCollinearEps = 1e-12;

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) - kCollinearEps <= p.x && p.x <= std::max(a.x, b.x) + kCollinearEps &&
         std::min(a.y, b.y) - kCollinearEps <= p.y && p.y <= std::max(a.y, b.y) + kCollinearEps;
}

}  // namespace

double Angle::normalize(double radians) {
  if (!std::isfinite(radians)) throw GeometryError("non-finite angle");
  // In-range values pass through; shifting by pi would round tiny negatives to 0.
  if (radians >= -kPi && radians < kPi) return radians;
  double r = std::fmod(radians + kPi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  r -= kPi;
  // fmod rounding can land exactly on +pi
  if (r >= kPi) r -= kTwoPi;
  if (r < -kPi) r = -kPi;
  return r;
}

Segment::Segment(Vec2 a_, Vec2 b_) : a(a_), b(b_) {
  if (a == b) throw GeometryError("degenerate segment");
}

const char* to_string(Compass c) {
  switch (c) {
    case Compass::NE: return "NE";
    case Compass::NW: return "NW";
    case Compass::SE: return "SE";
    case Compass::SW: return "SW";
  }
  return "?";
}

Angle angle_from_to(Vec2 from, Vec2 to) {
  if (from.is_zero() || to.is_zero()) throw GeometryError("zero-length vector");
  // atan2 of (cross, dot) is the signed angle in (-pi, pi]; Angle folds +pi to -pi.
  return Angle(std::atan2(cross(from, to), dot(from, to)));
}

Vec2 rotate(Vec2 v, Angle gamma) {
  const double c = std::cos(gamma.radians());
  const double s = std::sin(gamma.radians());
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Compass compass_of(Angle alpha) {
  const double a = alpha.radians();
  if (a < -kPi / 2) return Compass::SW;
  if (a < 0.0) return Compass::NW;
  if (a < kPi / 2) return Compass::NE;
  return Compass::SE;
}

Compass compass(Vec2 p, Vec2 p_prev, Vec2 p_dest) {
  return compass_of(angle_from_to(p - p_prev, p_dest - p));
}

int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  if (v > kCollinearEps) return 1;
  if (v < -kCollinearEps) return -1;
  return 0;
}

bool segments_intersect(const Segment& s1, const Segment& s2) {
  const int o1 = orientation(s1.a, s1.b, s2.a);
  const int o2 = orientation(s1.a, s1.b, s2.b);
  const int o3 = orientation(s2.a, s2.b, s1.a);
  const int o4 = orientation(s2.a, s2.b, s1.b);

  if (o1 != o2 && o3 != o4) {
    if (o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
  }
  if (o1 == 0 && on_segment(s1.a, s1.b, s2.a)) return true;
  if (o2 == 0 && on_segment(s1.a, s1.b, s2.b)) return true;
  if (o3 == 0 && on_segment(s2.a, s2.b, s1.a)) return true;
  if (o4 == 0 && on_segment(s2.a, s2.b, s1.b)) return true;
  return false;
}

bool segments_cross_strictly(const Segment& s1, const Segment& s2) {
  const int o1 = orientation(s1.a, s1.b, s2.a);
  const int o2 = orientation(s1.a, s1.b, s2.b);
  const int o3 = orientation(s2.a, s2.b, s1.a);
  const int o4 = orientation(s2.a, s2.b, s1.b);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

bool segment_intersection_point(const Segment& s1, const Segment& s2, Vec2& out) {
  const Vec2 r = s1.b - s1.a;
  const Vec2 s = s2.b - s2.a;
  const double denom = cross(r, s);
  if (std::abs(denom) <= kCollinearEps) return false;
  const Vec2 qp = s2.a - s1.a;
  const double t = cross(qp, s) / denom;
  const double u = cross(qp, r) / denom;
  if (t < -kCollinearEps || t > 1.0 + kCollinearEps || u < -kCollinearEps || u > 1.0 + kCollinearEps) {
    return false;
  }
  out = s1.a + r * t;
  return true;
}

}  // namespace georoute
