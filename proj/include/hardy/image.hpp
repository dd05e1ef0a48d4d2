#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hardy/geometry.hpp"

namespace hardy {

/// Row-major greyscale raster with `levels` grey levels (2..256); every pixel is < levels.
class GreyImage {
public:
  GreyImage(int width, int height, int levels = 256, std::uint8_t fill = 0);
  GreyImage(int width, int height, int levels, std::vector<std::uint8_t> pixels);

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] int height() const noexcept { return height_; }
  [[nodiscard]] int levels() const noexcept { return levels_; }
  [[nodiscard]] std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }

  [[nodiscard]] std::uint8_t at(int col, int row) const { return pixels_[index(col, row)]; }
  /// Throws InvalidArgument if value >= levels.
  void set(int col, int row, std::uint8_t value);

  friend bool operator==(const GreyImage&, const GreyImage&) = default;

private:
  [[nodiscard]] std::size_t index(int col, int row) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(col);
  }

  int width_;
  int height_;
  int levels_;
  std::vector<std::uint8_t> pixels_;
};

/// Pixel grid laid over a rectangle of the plane. Row 0 is the top edge (y = view.y1).
struct RasterGeometry {
  int width = 0;
  int height = 0;
  Viewport view{};

  [[nodiscard]] Point2 pixel_center(int col, int row) const {
    return {view.x0 + (col + 0.5) / width * view.width(), view.y1 - (row + 0.5) / height * view.height()};
  }

  /// Pixel containing p, or false when p lies outside the viewport.
  bool locate(Point2 p, int& col, int& row) const;
};

inline RasterGeometry unit_geometry(const GreyImage& img) { return {img.width(), img.height(), Viewport{}}; }

}  // namespace hardy
