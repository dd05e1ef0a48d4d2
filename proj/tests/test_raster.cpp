#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <string>

#include "hardy/errors.hpp"
#include "hardy/raster.hpp"

using namespace hardy;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

PgmError::Kind parse_kind(const std::string& s, std::optional<int> levels = {}) {
  try {
    (void)read_pgm(bytes_of(s), levels);
  } catch (const PgmError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no PgmError for input";
  return PgmError::Kind::MalformedHeader;
}

}  // namespace

TEST(GreyImage, Validation) {
  EXPECT_THROW(GreyImage(0, 3), InvalidArgument);
  EXPECT_THROW(GreyImage(3, 3, 1), InvalidArgument);
  EXPECT_THROW(GreyImage(3, 3, 257), InvalidArgument);
  EXPECT_THROW(GreyImage(2, 2, 16, 16), InvalidArgument);
  EXPECT_THROW(GreyImage(2, 2, 16, std::vector<std::uint8_t>{1, 2, 3}), InvalidArgument);
  EXPECT_THROW(GreyImage(2, 1, 16, std::vector<std::uint8_t>{1, 16}), InvalidArgument);
  GreyImage img(2, 2, 16);
  EXPECT_THROW(img.set(0, 0, 16), InvalidArgument);
  img.set(1, 0, 15);
  EXPECT_EQ(img.at(1, 0), 15);
  EXPECT_EQ(img.pixels()[1], 15);
}

TEST(Pgm, SinglePixelBytes) {
  const GreyImage img(1, 1, 256, 0);
  const auto bytes = write_pgm(img);
  const std::string expect = std::string("P5 1 1 255\n") + '\0';
  EXPECT_EQ(std::string(bytes.begin(), bytes.end()), expect);
  EXPECT_EQ(read_pgm(bytes), img);
}

TEST(Pgm, HeaderUsesLevels) {
  const GreyImage img(3, 2, 16, 7);
  const auto bytes = write_pgm(img);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 10), "P5 3 2 15\n");
  EXPECT_EQ(bytes.size(), 16u);
  const auto back = read_pgm(bytes);
  EXPECT_EQ(back.levels(), 16);
  EXPECT_EQ(back, img);
}

TEST(Pgm, TruncatedPayload) {
  EXPECT_EQ(parse_kind("P5 5 2 255\n" + std::string(9, 'a')), PgmError::Kind::Truncated);
  EXPECT_EQ(parse_kind("P5 5 2 255\n"), PgmError::Kind::Truncated);
  EXPECT_EQ(parse_kind("P5 5 2"), PgmError::Kind::Truncated);
  EXPECT_EQ(parse_kind("P2 2 2 255\n1 2 3"), PgmError::Kind::Truncated);
}

TEST(Pgm, MalformedHeader) {
  EXPECT_EQ(parse_kind("P6 1 1 255\n\x01"), PgmError::Kind::MalformedHeader);
  EXPECT_EQ(parse_kind("P5 x 1 255\n\x01"), PgmError::Kind::MalformedHeader);
  EXPECT_EQ(parse_kind("P5 0 1 255\n"), PgmError::Kind::MalformedHeader);
  EXPECT_EQ(parse_kind("P5 1 1 65535\n\x01\x01"), PgmError::Kind::MalformedHeader);
}

TEST(Pgm, MaxvalMismatch) {
  const auto bytes = write_pgm(GreyImage(2, 2, 16, 3));
  EXPECT_EQ(read_pgm(bytes, 16).levels(), 16);
  EXPECT_EQ(parse_kind(std::string(bytes.begin(), bytes.end()), 256), PgmError::Kind::MaxvalMismatch);
}

TEST(Pgm, ValueAboveMaxval) {
  EXPECT_EQ(parse_kind("P5 1 1 15\n\x10"), PgmError::Kind::ValueOutOfRange);
  EXPECT_EQ(parse_kind("P2 1 1 15\n16\n"), PgmError::Kind::ValueOutOfRange);
}

TEST(Pgm, ReadsAsciiWithComments) {
  const auto img = read_pgm(bytes_of("P2\n# comment\n3 1\n# more\n255\n0 128\n255\n"));
  EXPECT_EQ(img.width(), 3);
  EXPECT_EQ(img.height(), 1);
  EXPECT_EQ(img.at(0, 0), 0);
  EXPECT_EQ(img.at(1, 0), 128);
  EXPECT_EQ(img.at(2, 0), 255);
}

TEST(Pgm, RandomRoundTrip) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int levels = 2 + static_cast<int>(seed * 13 % 255);
    const auto img = make_random_image(1 + static_cast<int>(seed % 7) * 9, 1 + static_cast<int>(seed % 5) * 11, levels, seed);
    const auto bytes = write_pgm(img);
    EXPECT_EQ(read_pgm(bytes), img);
    EXPECT_EQ(write_pgm(read_pgm(bytes)), bytes);
  }
}

TEST(Pgm, FileRoundTrip) {
  const auto path = (std::filesystem::temp_directory_path() / "hardy_raster_roundtrip.pgm").string();
  const auto img = make_portrait_image(40);
  save_pgm(img, path);
  EXPECT_EQ(load_pgm(path, 256), img);
  std::filesystem::remove(path);
  EXPECT_THROW((void)load_pgm(path), Error);
}

TEST(Grid, SingleCellIsBorder) {
  const auto img = make_grid_image(1, 16);
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 16; ++c) {
      const bool border = r == 0 || c == 0 || r == 15 || c == 15;
      EXPECT_EQ(img.at(c, r), border ? 0 : 255) << r << "," << c;
    }
}

TEST(Grid, EightByEight) {
  const auto img = make_grid_image(8, 256);
  for (int k = 0; k <= 8; ++k) EXPECT_EQ(grid_line_position(k, 8, 256), std::min(32 * k, 255));
  std::size_t dark = 0;
  for (auto v : img.pixels()) {
    EXPECT_TRUE(v == 0 || v == 255);
    dark += v == 0;
  }
  EXPECT_EQ(dark, 9u * 256u * 2u - 81u);
  EXPECT_EQ(img.at(32, 100), 0);
  EXPECT_EQ(img.at(33, 100), 255);
}

TEST(Generators, Deterministic) {
  EXPECT_EQ(write_pgm(make_grid_image(8, 128)), write_pgm(make_grid_image(8, 128)));
  EXPECT_EQ(write_pgm(make_portrait_image(64)), write_pgm(make_portrait_image(64)));
  EXPECT_EQ(make_random_image(9, 9, 256, 42), make_random_image(9, 9, 256, 42));
  EXPECT_FALSE(make_random_image(9, 9, 256, 42) == make_random_image(9, 9, 256, 43));
}

TEST(Generators, PortraitUsesManyLevels) {
  const auto img = make_portrait_image(256);
  std::vector<int> seen(256, 0);
  for (auto v : img.pixels()) seen[v] = 1;
  int count = 0;
  for (int s : seen) count += s;
  EXPECT_GT(count, 100);
}

TEST(Press, ZeroIsIdentity) {
  const auto c = quadratic_press(0.0);
  ASSERT_EQ(c.size(), 64u);
  EXPECT_EQ(c.source(), c.target());
  EXPECT_EQ(c.source().front(), (Point2{0, 0}));
}

TEST(Press, QuarterSagsTopCenter) {
  const auto c = quadratic_press(0.25);
  bool found = false;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const auto s = c.source()[j];
    const auto t = c.target()[j];
    EXPECT_EQ(t.x, s.x);
    if (s.y == 0.0) EXPECT_EQ(t.y, 0.0);
    if (s == Point2{0.5, 1.0}) {
      EXPECT_DOUBLE_EQ(t.y, 0.75);
      found = true;
    }
  }
  EXPECT_TRUE(found);
  EXPECT_THROW((void)quadratic_press(1.0), InvalidArgument);
  EXPECT_THROW((void)quadratic_press(-0.1), InvalidArgument);
}

TEST(Press, CounterClockwise) {
  const auto pts = unit_square_boundary(16);
  double area2 = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto a = pts[i];
    const auto b = pts[(i + 1) % pts.size()];
    area2 += a.x * b.y - b.x * a.y;
  }
  EXPECT_NEAR(area2, 2.0, 1e-12);
}

TEST(Metrics, EqualImages) {
  const auto img = make_portrait_image(32);
  const auto m = metrics(img, img);
  EXPECT_EQ(m.mae, 0.0);
  EXPECT_EQ(m.exact_match_fraction, 1.0);
  EXPECT_TRUE(std::isinf(m.psnr));
}

TEST(Metrics, OnePixelOff) {
  const GreyImage a(256, 256, 256, 0);
  GreyImage b = a;
  b.set(10, 20, 255);
  const auto m = metrics(a, b);
  EXPECT_DOUBLE_EQ(m.mae, 255.0 / 65536.0);
  EXPECT_DOUBLE_EQ(m.exact_match_fraction, 65535.0 / 65536.0);
  EXPECT_NEAR(m.psnr, 10 * std::log10(65536.0), 1e-9);
  EXPECT_EQ(m.total_greyness_b - m.total_greyness_a, 255.0);
}

TEST(Metrics, CentralRegion) {
  const auto r = central_region(256, 256, 0.9);
  EXPECT_EQ(r.col0, 13);
  EXPECT_EQ(r.row0, 13);
  EXPECT_EQ(r.col1, 243);
  EXPECT_EQ(r.row1, 243);
  const GreyImage a(256, 256, 256, 0);
  GreyImage b = a;
  b.set(0, 0, 255);
  EXPECT_EQ(metrics(a, b, r).mae, 0.0);
  EXPECT_THROW((void)metrics(a, GreyImage(255, 256), r), InvalidArgument);
  EXPECT_THROW((void)central_region(10, 10, 0.0), InvalidArgument);
}
