#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace hardy {

/// A point of the real plane, in user coordinates.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
};

inline double norm(Point2 p) { return std::hypot(p.x, p.y); }

/// Axis-aligned rectangle [x0, x1] × [y0, y1].
struct Viewport {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 1.0;
  double y1 = 1.0;

  [[nodiscard]] double width() const { return x1 - x0; }
  [[nodiscard]] double height() const { return y1 - y0; }
  [[nodiscard]] Point2 center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  [[nodiscard]] bool contains(Point2 p) const { return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1; }
};

/// Bounding box of a nonempty point list.
Viewport bounding_box(std::span<const Point2> points);

/// Quadrature weights along the closed polyline through `points` (in order).
///
/// Sample j receives half of each adjacent edge length, divided by the perimeter, so the
/// weights sum to one. Falls back to 1/N when the perimeter is zero or any share vanishes.
std::vector<double> arc_length_weights(std::span<const Point2> points);

}  // namespace hardy
