#pragma once

#include <cmath>

namespace carchase {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Normalize an angle into [0, 2*pi).
inline double normalize_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a = 0;  // fmod can land exactly on 2*pi
  return a;
}

// Signed angular difference a - b wrapped into (-pi, pi].
inline double angle_diff(double a, double b) {
  double d = std::fmod(a - b, kTwoPi);
  if (d > kTwoPi / 2) d -= kTwoPi;
  if (d <= -kTwoPi / 2) d += kTwoPi;
  return d;
}

struct Point {
  double x = 0;
  double y = 0;
};

inline double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Continuous car pose. theta is kept normalized to [0, 2*pi).
struct Pose {
  double x = 0;
  double y = 0;
  double theta = 0;

  Pose() = default;
  Pose(double x_, double y_, double theta_)
      : x(x_), y(y_), theta(normalize_angle(theta_)) {}

  Point position() const { return {x, y}; }
};

inline double position_distance(const Pose& a, const Pose& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

struct TimedState {
  Pose pose;
  int time = 0;

  TimedState() = default;
  TimedState(const Pose& p, int t) : pose(p), time(t) {}
};

// Distance from point p to the segment [a, b]. Degenerates to point
// distance when a == b.
inline double distance_to_segment(const Point& p, const Point& a,
                                  const Point& b) {
  double vx = b.x - a.x, vy = b.y - a.y;
  double wx = p.x - a.x, wy = p.y - a.y;
  double vv = vx * vx + vy * vy;
  if (vv <= 0) return std::hypot(wx, wy);
  double t = (wx * vx + wy * vy) / vv;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  return std::hypot(wx - t * vx, wy - t * vy);
}

}  // namespace carchase
