#include "hardy/geometry.hpp"

#include <algorithm>

#include "hardy/errors.hpp"

namespace hardy {

Viewport bounding_box(std::span<const Point2> points) {
  if (points.empty()) throw InvalidArgument("bounding_box: empty point list");
  Viewport box{points[0].x, points[0].y, points[0].x, points[0].y};
  for (const auto& p : points) {
    box.x0 = std::min(box.x0, p.x);
    box.x1 = std::max(box.x1, p.x);
    box.y0 = std::min(box.y0, p.y);
    box.y1 = std::max(box.y1, p.y);
  }
  return box;
}

std::vector<double> arc_length_weights(std::span<const Point2> points) {
  const std::size_t n = points.size();
  if (n == 0) return {};
  std::vector<double> edge(n);
  double perimeter = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    edge[j] = norm(points[(j + 1) % n] - points[j]);
    perimeter += edge[j];
  }
  std::vector<double> weights(n, 1.0 / static_cast<double>(n));
  if (!(perimeter > 0.0) || !std::isfinite(perimeter)) return weights;
  for (std::size_t j = 0; j < n; ++j) {
    const double share = 0.5 * (edge[j] + edge[(j + n - 1) % n]) / perimeter;
    if (!(share > 0.0)) return std::vector<double>(n, 1.0 / static_cast<double>(n));
    weights[j] = share;
  }
  return weights;
}

}  // namespace hardy
