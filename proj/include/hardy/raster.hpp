#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hardy/errors.hpp"
#include "hardy/image.hpp"
#include "hardy/warp.hpp"

namespace hardy {

class PgmError : public Error {
public:
  enum class Kind { MalformedHeader, Truncated, MaxvalMismatch, ValueOutOfRange };

  PgmError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

/// Parses a binary (P5) or ASCII (P2) PGM with maxval <= 255; levels = maxval + 1.
/// When `expected_levels` is given, a maxval other than expected_levels − 1 is a MaxvalMismatch.
[[nodiscard]] GreyImage read_pgm(std::span<const std::uint8_t> bytes, std::optional<int> expected_levels = {});

/// Binary P5 with the header "P5 <w> <h> <levels−1>\n".
[[nodiscard]] std::vector<std::uint8_t> write_pgm(const GreyImage& img);

[[nodiscard]] GreyImage load_pgm(const std::string& path, std::optional<int> expected_levels = {});
void save_pgm(const GreyImage& img, const std::string& path);

/// Row/column index of the k-th grid line (k = 0..n) in an image of `size` pixels.
[[nodiscard]] int grid_line_position(int k, int n, int size);

/// White (255) square image with one-pixel black (0) lines cutting it into n × n cells.
[[nodiscard]] GreyImage make_grid_image(int n, int size);

/// Smooth synthetic 256-level test picture (head-and-shoulders silhouette with shading and a
/// few features), a stand-in for a natural photograph.
[[nodiscard]] GreyImage make_portrait_image(int size);

/// Uniformly random pixels, deterministic in `seed`.
[[nodiscard]] GreyImage make_random_image(int width, int height, int levels, std::uint64_t seed);

/// Quadratic press of the unit square, (ξ, η) ↦ (ξ, η (1 − 4αξ(1 − ξ))), sampled at 16 points
/// per side counterclockwise from the origin (64 pairs). The top edge sags, the bottom stays.
[[nodiscard]] BoundaryCorrespondence quadratic_press(double alpha);

/// Same traversal of the unit-square boundary with `per_side` samples on each side.
[[nodiscard]] std::vector<Point2> unit_square_boundary(int per_side);

/// Inclusive-exclusive pixel rectangle [col0, col1) × [row0, row1).
struct PixelRect {
  int col0 = 0;
  int row0 = 0;
  int col1 = 0;
  int row1 = 0;
};

/// Centered rectangle whose sides are `fraction` of the image sides.
[[nodiscard]] PixelRect central_region(int width, int height, double fraction);

struct ImageMetrics {
  double mae = 0.0;
  double psnr = 0.0;  // +inf when the images agree on the region
  double exact_match_fraction = 0.0;
  double total_greyness_a = 0.0;
  double total_greyness_b = 0.0;
};

[[nodiscard]] ImageMetrics metrics(const GreyImage& a, const GreyImage& b, std::optional<PixelRect> mask = {});

}  // namespace hardy
