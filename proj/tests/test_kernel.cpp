#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "hardy/errors.hpp"
#include "hardy/kernel.hpp"

using namespace hardy;

namespace {

constexpr double kPi = std::numbers::pi;

// Straight complex arithmetic, no shared code with the library.
std::complex<double> reference_kernel(std::complex<double> z, std::complex<double> w) {
  return std::complex<double>(0.0, 1.0 / (2.0 * kPi)) / (z - std::conj(w));
}

}  // namespace

TEST(UpperHalfPoint, RejectsClosedLowerHalfPlane) {
  EXPECT_THROW(UpperHalfPoint(0.0, 0.0), InvalidArgument);
  EXPECT_THROW(UpperHalfPoint(1.0, -1e-300), InvalidArgument);
  EXPECT_THROW(UpperHalfPoint(NAN, 1.0), InvalidArgument);
  EXPECT_THROW(UpperHalfPoint(0.0, INFINITY), InvalidArgument);
  EXPECT_NO_THROW(UpperHalfPoint(-3.0, 1e-300));
}

TEST(Szego, DiagonalAtI) {
  const auto k = szego({0, 1}, {0, 1});
  EXPECT_NEAR(k.real(), 1.0 / (4 * kPi), 1e-16);
  EXPECT_EQ(k.imag(), 0.0);
  EXPECT_NEAR(k.real(), 0.0795775, 1e-7);
}

TEST(Szego, TwoIAgainstI) {
  const auto k = szego({0, 2}, {0, 1});
  EXPECT_NEAR(k.real(), 1.0 / (6 * kPi), 1e-16);
  EXPECT_NEAR(k.real(), 0.0530516, 1e-7);
  EXPECT_EQ(k.imag(), 0.0);
}

TEST(Szego, RealPartOffAxis) {
  EXPECT_NEAR(szego_re({1, 1}, {0, 1}), 1.0 / (5 * kPi), 1e-16);
  EXPECT_NEAR(szego_re({1, 1}, {0, 1}), 0.0636620, 1e-7);
}

TEST(Szego, MatchesComplexArithmetic) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-5, 5), uy(0.05, 8);
  for (int t = 0; t < 500; ++t) {
    const UpperHalfPoint z(ux(rng), uy(rng)), w(ux(rng), uy(rng));
    const auto expect = reference_kernel(z.z(), w.z());
    const auto got = szego(z, w);
    EXPECT_NEAR(got.real(), expect.real(), 1e-14 * std::abs(expect));
    EXPECT_NEAR(got.imag(), expect.imag(), 1e-14 * std::abs(expect));
    EXPECT_EQ(szego_re(z, w), got.real());
  }
}

TEST(Szego, HermitianSymmetryIsExact) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(-10, 10), uy(1e-3, 10);
  for (int t = 0; t < 1000; ++t) {
    const UpperHalfPoint z(ux(rng), uy(rng)), w(ux(rng), uy(rng));
    EXPECT_EQ(szego(z, w), std::conj(szego(w, z)));
    EXPECT_EQ(szego_re(z, w), szego_re(w, z));
  }
}

TEST(Szego, DiagonalIsRealAndPositive) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(-10, 10), uy(1e-3, 10);
  for (int t = 0; t < 200; ++t) {
    const UpperHalfPoint z(ux(rng), uy(rng));
    const auto k = szego(z, z);
    EXPECT_EQ(k.imag(), 0.0);
    EXPECT_NEAR(k.real(), 1.0 / (4 * kPi * z.y()), 1e-15 * k.real());
  }
}

TEST(SzegoGrad, MatchesCentralDifferences) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(-3, 3), uy(0.1, 10);
  const double h = 1e-6;
  for (int t = 0; t < 300; ++t) {
    const UpperHalfPoint z(ux(rng), uy(rng)), w(ux(rng), uy(rng));
    const auto g = szego_re_grad(z, w);
    const double fx = (szego_re({z.x() + h, z.y()}, w) - szego_re({z.x() - h, z.y()}, w)) / (2 * h);
    const double fy = (szego_re({z.x(), z.y() + h}, w) - szego_re({z.x(), z.y() - h}, w)) / (2 * h);
    const double scale = std::hypot(g.dx, g.dy);
    ASSERT_GT(scale, 0.0);
    EXPECT_LE(std::hypot(g.dx - fx, g.dy - fy) / scale, 1e-6);
  }
}

TEST(SzegoGrad, IsCauchyRiemannOfDerivative) {
  // Re K is harmonic, so its gradient is the conjugate of dK/dz.
  const UpperHalfPoint z(0.3, 0.7), w(-1.2, 2.0);
  const auto d = std::complex<double>(0.0, -1.0 / (2.0 * kPi)) / std::pow(z.z() - std::conj(w.z()), 2);
  const auto g = szego_re_grad(z, w);
  EXPECT_NEAR(g.dx, d.real(), 1e-15);
  EXPECT_NEAR(g.dy, -d.imag(), 1e-15);
}

TEST(SzegoSlice, LaplacianDecaysQuadratically) {
  const UpperHalfPoint w(0.2, 0.8);
  auto lap = [&](double x, double y, double h) {
    return (szego_re({x + h, y}, w) + szego_re({x - h, y}, w) + szego_re({x, y + h}, w) + szego_re({x, y - h}, w) -
            4 * szego_re({x, y}, w)) /
           (h * h);
  };
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const double x = -1.0 + 0.2 * i, y = 0.5 + 0.15 * j;
      s1 += std::pow(lap(x, y, 1e-2), 2);
      s2 += std::pow(lap(x, y, 5e-3), 2);
    }
  const double ratio = std::sqrt(s1 / s2);
  EXPECT_GE(ratio, 3.5);
  EXPECT_LE(ratio, 4.5);
}
