#include "hardy/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hardy/errors.hpp"

namespace hardy {

namespace {

void check_shape(int width, int height, int levels) {
  if (width <= 0 || height <= 0) throw InvalidArgument("GreyImage: dimensions must be positive");
  if (levels < 2 || levels > 256) throw InvalidArgument("GreyImage: levels must lie in [2, 256]");
}

}  // namespace

GreyImage::GreyImage(int width, int height, int levels, std::uint8_t fill)
    : width_(width), height_(height), levels_(levels) {
  check_shape(width, height, levels);
  if (fill >= levels) throw InvalidArgument("GreyImage: fill value exceeds level count");
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

GreyImage::GreyImage(int width, int height, int levels, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), levels_(levels), pixels_(std::move(pixels)) {
  check_shape(width, height, levels);
  if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw InvalidArgument("GreyImage: pixel count " + std::to_string(pixels_.size()) + " does not match " +
                          std::to_string(width) + "x" + std::to_string(height));
  }
  if (std::any_of(pixels_.begin(), pixels_.end(), [&](std::uint8_t v) { return v >= levels; })) {
    throw InvalidArgument("GreyImage: pixel value >= levels");
  }
}

void GreyImage::set(int col, int row, std::uint8_t value) {
  if (value >= levels_) throw InvalidArgument("GreyImage::set: value >= levels");
  pixels_[index(col, row)] = value;
}

bool RasterGeometry::locate(Point2 p, int& col, int& row) const {
  const double fx = (p.x - view.x0) / view.width() * width;
  const double fy = (view.y1 - p.y) / view.height() * height;
  if (!(fx >= 0.0) || !(fy >= 0.0) || fx >= width || fy >= height) return false;
  col = static_cast<int>(std::floor(fx));
  row = static_cast<int>(std::floor(fy));
  return true;
}

}  // namespace hardy
