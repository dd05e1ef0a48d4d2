#include "hardy/kernel.hpp"

#include <cmath>
#include <string>

#include "hardy/errors.hpp"

namespace hardy {

UpperHalfPoint::UpperHalfPoint(double x, double y) : x_(x), y_(y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw InvalidArgument("UpperHalfPoint: coordinates must be finite");
  }
  if (!(y > 0.0)) {
    throw InvalidArgument("UpperHalfPoint: imaginary part must be > 0, got " + std::to_string(y));
  }
}

std::complex<double> szego(const UpperHalfPoint& z, const UpperHalfPoint& w) noexcept {
  const double a = z.x() - w.x();
  const double b = z.y() + w.y();
  const double scale = kTwoPi * (a * a + b * b);
  return {b / scale, a / scale};
}

double szego_re(const UpperHalfPoint& z, const UpperHalfPoint& w) noexcept {
  const double a = z.x() - w.x();
  const double b = z.y() + w.y();
  return b / (kTwoPi * (a * a + b * b));
}

Gradient szego_re_grad(const UpperHalfPoint& z, const UpperHalfPoint& w) noexcept {
  // With d = z − conj(w) = a + ib, Re K = b / (2π|d|²):
  //   ∂/∂x = −2ab / (2π|d|⁴),  ∂/∂y = (a² − b²) / (2π|d|⁴).
  const double a = z.x() - w.x();
  const double b = z.y() + w.y();
  const double d2 = a * a + b * b;
  const double denom = kTwoPi * d2 * d2;
  return {-2.0 * a * b / denom, (a * a - b * b) / denom};
}

}  // namespace hardy
