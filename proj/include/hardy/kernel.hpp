#pragma once

#include <complex>
#include <numbers>

namespace hardy {

/// A point x + iy of the open upper half-plane.
///
/// Construction rejects y <= 0 and non-finite coordinates with InvalidArgument, so every
/// kernel routine below can assume a strictly positive imaginary part.
class UpperHalfPoint {
public:
  UpperHalfPoint(double x, double y);

  [[nodiscard]] double x() const noexcept { return x_; }
  [[nodiscard]] double y() const noexcept { return y_; }
  [[nodiscard]] std::complex<double> z() const noexcept { return {x_, y_}; }

  friend bool operator==(const UpperHalfPoint&, const UpperHalfPoint&) = default;

private:
  double x_;
  double y_;
};

/// Partial derivatives with respect to the real and imaginary part of the first argument.
struct Gradient {
  double dx = 0.0;
  double dy = 0.0;
};

/// Szegő kernel of H²(ℂ⁺): K(z, w) = (i / 2π) / (z − conj(w)).
///
/// Evaluated as (b + i a) / (2π (a² + b²)) with a = Re z − Re w, b = Im z + Im w, which makes
/// szego(z, w) == conj(szego(w, z)) hold bit for bit.
[[nodiscard]] std::complex<double> szego(const UpperHalfPoint& z, const UpperHalfPoint& w) noexcept;

/// Re K(z, w), the Poisson-type kernel b / (2π (a² + b²)). Symmetric in its arguments.
[[nodiscard]] double szego_re(const UpperHalfPoint& z, const UpperHalfPoint& w) noexcept;

/// Gradient of z ↦ Re K(z, w) from the closed form dK/dz = −(i / 2π) / (z − conj(w))².
[[nodiscard]] Gradient szego_re_grad(const UpperHalfPoint& z, const UpperHalfPoint& w) noexcept;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace hardy
