#include "hardy/raster.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <random>
#include <string>

namespace hardy {

namespace {

class PgmCursor {
public:
  explicit PgmCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  // Unsigned decimal token; `what` names the field for diagnostics.
  long long number(const char* what) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) throw PgmError(PgmError::Kind::Truncated, std::string("pgm: missing ") + what);
    if (!std::isdigit(bytes_[pos_])) {
      throw PgmError(PgmError::Kind::MalformedHeader, std::string("pgm: expected a number for ") + what);
    }
    long long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > std::numeric_limits<int>::max()) {
        throw PgmError(PgmError::Kind::MalformedHeader, std::string("pgm: ") + what + " out of range");
      }
      ++pos_;
    }
    if (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) && bytes_[pos_] != '#') {
      throw PgmError(PgmError::Kind::MalformedHeader, std::string("pgm: junk after ") + what);
    }
    return v;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::uint8_t peek() const { return bytes_[pos_]; }

private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GreyImage read_pgm(std::span<const std::uint8_t> bytes, std::optional<int> expected_levels) {
  if (bytes.size() < 2) throw PgmError(PgmError::Kind::Truncated, "pgm: missing magic number");
  if (bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
    throw PgmError(PgmError::Kind::MalformedHeader, "pgm: magic number must be P5 or P2");
  }
  const bool binary = bytes[1] == '5';
  PgmCursor cur(bytes);
  cur.advance(2);
  if (cur.remaining() > 0 && !std::isspace(cur.peek())) {
    throw PgmError(PgmError::Kind::MalformedHeader, "pgm: junk after magic number");
  }
  const long long width = cur.number("width");
  const long long height = cur.number("height");
  const long long maxval = cur.number("maxval");
  if (width <= 0 || height <= 0) throw PgmError(PgmError::Kind::MalformedHeader, "pgm: dimensions must be positive");
  if (maxval < 1 || maxval > 255) {
    throw PgmError(PgmError::Kind::MalformedHeader, "pgm: maxval must lie in [1, 255]");
  }
  if (expected_levels && maxval != *expected_levels - 1) {
    throw PgmError(PgmError::Kind::MaxvalMismatch, "pgm: maxval " + std::to_string(maxval) + " does not match " +
                                                       std::to_string(*expected_levels) + " levels");
  }
  const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<std::uint8_t> pixels;
  pixels.reserve(count);
  if (binary) {
    // Exactly one whitespace byte separates maxval from the raster.
    if (cur.remaining() == 0) throw PgmError(PgmError::Kind::Truncated, "pgm: missing raster");
    cur.advance(1);
    if (cur.remaining() < count) {
      throw PgmError(PgmError::Kind::Truncated, "pgm: raster has " + std::to_string(cur.remaining()) +
                                                    " bytes, header claims " + std::to_string(count));
    }
    const auto raster = bytes.subspan(cur.pos(), count);
    pixels.assign(raster.begin(), raster.end());
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const long long v = cur.number("pixel");
      pixels.push_back(static_cast<std::uint8_t>(std::min<long long>(v, 255)));
      if (v > maxval) throw PgmError(PgmError::Kind::ValueOutOfRange, "pgm: pixel value exceeds maxval");
    }
  }
  if (binary && std::any_of(pixels.begin(), pixels.end(), [&](std::uint8_t v) { return v > maxval; })) {
    throw PgmError(PgmError::Kind::ValueOutOfRange, "pgm: pixel value exceeds maxval");
  }
  return {static_cast<int>(width), static_cast<int>(height), static_cast<int>(maxval) + 1, std::move(pixels)};
}

std::vector<std::uint8_t> write_pgm(const GreyImage& img) {
  const std::string header = "P5 " + std::to_string(img.width()) + " " + std::to_string(img.height()) + " " +
                             std::to_string(img.levels() - 1) + "\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const auto px = img.pixels();
  out.insert(out.end(), px.begin(), px.end());
  return out;
}

GreyImage load_pgm(const std::string& path, std::optional<int> expected_levels) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return read_pgm(bytes, expected_levels);
}

void save_pgm(const GreyImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  const auto bytes = write_pgm(img);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed for " + path);
}

int grid_line_position(int k, int n, int size) {
  const long long pos = static_cast<long long>(k) * size / n;
  return static_cast<int>(std::min<long long>(pos, size - 1));
}

GreyImage make_grid_image(int n, int size) {
  if (n < 1) throw InvalidArgument("make_grid_image: n must be >= 1");
  if (size < n) throw InvalidArgument("make_grid_image: size must be >= n");
  GreyImage img(size, size, 256, 255);
  for (int k = 0; k <= n; ++k) {
    const int line = grid_line_position(k, n, size);
    for (int t = 0; t < size; ++t) {
      img.set(t, line, 0);
      img.set(line, t, 0);
    }
  }
  return img;
}

namespace {

double smoothstep(double edge0, double edge1, double x) {
  const double t = std::clamp((x - edge0) / (edge1 - edge0), 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

// 1 inside the ellipse, 0 outside, with a soft rim of relative width `soft`.
double ellipse(double x, double y, double cx, double cy, double rx, double ry, double soft) {
  const double r = std::sqrt((x - cx) * (x - cx) / (rx * rx) + (y - cy) * (y - cy) / (ry * ry));
  return 1.0 - smoothstep(1.0 - soft, 1.0 + soft, r);
}

}  // namespace

GreyImage make_portrait_image(int size) {
  if (size < 8) throw InvalidArgument("make_portrait_image: size must be >= 8");
  std::vector<std::uint8_t> px(static_cast<std::size_t>(size) * static_cast<std::size_t>(size));
  for (int row = 0; row < size; ++row) {
    for (int col = 0; col < size; ++col) {
      const double x = (col + 0.5) / size;
      const double y = (row + 0.5) / size;  // downwards
      double v = 70.0 + 60.0 * x + 25.0 * std::sin(3.0 * y);  // backdrop
      const double shoulders = ellipse(x, y, 0.5, 1.05, 0.45, 0.32, 0.08);
      v = v * (1.0 - shoulders) + (90.0 + 30.0 * std::cos(4.0 * x)) * shoulders;
      const double hair = ellipse(x, y, 0.5, 0.40, 0.26, 0.30, 0.06);
      v = v * (1.0 - hair) + (45.0 + 20.0 * std::sin(9.0 * x + 5.0 * y)) * hair;
      const double face = ellipse(x, y, 0.5, 0.46, 0.19, 0.24, 0.06);
      const double shade = 190.0 - 80.0 * ((x - 0.42) * (x - 0.42) + (y - 0.40) * (y - 0.40));
      v = v * (1.0 - face) + shade * face;
      const double eyes =
          ellipse(x, y, 0.43, 0.42, 0.035, 0.02, 0.3) + ellipse(x, y, 0.57, 0.42, 0.035, 0.02, 0.3);
      v = v * (1.0 - eyes) + 40.0 * eyes;
      const double mouth = ellipse(x, y, 0.5, 0.58, 0.06, 0.015, 0.3);
      v = v * (1.0 - mouth) + 120.0 * mouth;
      px[static_cast<std::size_t>(row) * static_cast<std::size_t>(size) + static_cast<std::size_t>(col)] =
          static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
    }
  }
  return {size, size, 256, std::move(px)};
}

GreyImage make_random_image(int width, int height, int levels, std::uint64_t seed) {
  if (width <= 0 || height <= 0) throw InvalidArgument("make_random_image: dimensions must be positive");
  if (levels < 2 || levels > 256) throw InvalidArgument("make_random_image: levels must lie in [2, 256]");
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> px(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (auto& v : px) v = static_cast<std::uint8_t>(rng() % static_cast<std::uint64_t>(levels));
  return {width, height, levels, std::move(px)};
}

std::vector<Point2> unit_square_boundary(int per_side) {
  if (per_side < 1) throw InvalidArgument("unit_square_boundary: per_side must be >= 1");
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(4 * per_side));
  for (int k = 0; k < per_side; ++k) pts.push_back({static_cast<double>(k) / per_side, 0.0});
  for (int k = 0; k < per_side; ++k) pts.push_back({1.0, static_cast<double>(k) / per_side});
  for (int k = 0; k < per_side; ++k) pts.push_back({1.0 - static_cast<double>(k) / per_side, 1.0});
  for (int k = 0; k < per_side; ++k) pts.push_back({0.0, 1.0 - static_cast<double>(k) / per_side});
  return pts;
}

BoundaryCorrespondence quadratic_press(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidArgument("quadratic_press: alpha must lie in [0, 1)");
  auto source = unit_square_boundary(16);
  std::vector<Point2> target;
  target.reserve(source.size());
  for (const auto& p : source) target.push_back({p.x, p.y * (1.0 - alpha * 4.0 * p.x * (1.0 - p.x))});
  return {std::move(source), std::move(target)};
}

PixelRect central_region(int width, int height, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw InvalidArgument("central_region: fraction must lie in (0, 1]");
  const int mx = static_cast<int>(std::lround(width * (1.0 - fraction) / 2.0));
  const int my = static_cast<int>(std::lround(height * (1.0 - fraction) / 2.0));
  return {mx, my, width - mx, height - my};
}

ImageMetrics metrics(const GreyImage& a, const GreyImage& b, std::optional<PixelRect> mask) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw InvalidArgument("metrics: images differ in size");
  }
  const PixelRect r = mask.value_or(PixelRect{0, 0, a.width(), a.height()});
  if (r.col0 < 0 || r.row0 < 0 || r.col1 > a.width() || r.row1 > a.height() || r.col0 >= r.col1 ||
      r.row0 >= r.row1) {
    throw InvalidArgument("metrics: mask rectangle is empty or out of bounds");
  }
  ImageMetrics m;
  double abs_sum = 0.0;
  double sq_sum = 0.0;
  std::size_t exact = 0;
  for (int row = r.row0; row < r.row1; ++row) {
    for (int col = r.col0; col < r.col1; ++col) {
      const int va = a.at(col, row);
      const int vb = b.at(col, row);
      const double d = std::abs(va - vb);
      abs_sum += d;
      sq_sum += d * d;
      exact += va == vb ? 1 : 0;
      m.total_greyness_a += va;
      m.total_greyness_b += vb;
    }
  }
  const double n = static_cast<double>(r.col1 - r.col0) * static_cast<double>(r.row1 - r.row0);
  m.mae = abs_sum / n;
  m.exact_match_fraction = static_cast<double>(exact) / n;
  const double mse = sq_sum / n;
  const double peak = std::max(a.levels(), b.levels()) - 1;
  m.psnr = mse == 0.0 ? std::numeric_limits<double>::infinity() : 10.0 * std::log10(peak * peak / mse);
  return m;
}

}  // namespace hardy
