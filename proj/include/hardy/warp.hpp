#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hardy/dirichlet.hpp"
#include "hardy/errors.hpp"
#include "hardy/geometry.hpp"
#include "hardy/image.hpp"

namespace hardy {

/// Default regularization for map fitting. Weights are arc-length shares summing to one.
inline constexpr double kDefaultFitLambda = 1e-8;
/// Height of the bottom edge of the canonical box the source region is embedded into.
inline constexpr double kDefaultEmbedYMin = 0.5;

/// Similarity X = s (ξ − ξ₀), Y = s (η − η₀) + y_min taking user coordinates into ℂ⁺.
struct Embedding {
  double scale = 1.0;
  Point2 origin{};
  double y_min = kDefaultEmbedYMin;

  [[nodiscard]] Point2 lift(Point2 p) const { return {scale * (p.x - origin.x), scale * (p.y - origin.y) + y_min}; }
  [[nodiscard]] Point2 pull_back(Point2 q) const {
    return {q.x / scale + origin.x, (q.y - y_min) / scale + origin.y};
  }
  /// Throws DomainError when the lifted point is not strictly above the real axis.
  [[nodiscard]] UpperHalfPoint to_halfplane(Point2 p) const;
};

/// Normalizes the bounding box of `points` to unit larger side with its bottom edge at y_min.
/// Throws InvalidArgument for an empty list, a degenerate box, or y_min <= 0.
[[nodiscard]] Embedding embed_to_halfplane(std::span<const Point2> points, double y_min = kDefaultEmbedYMin);

/// Boundary samples of the source region paired with their images on the target boundary.
class BoundaryCorrespondence {
public:
  BoundaryCorrespondence(std::vector<Point2> source, std::vector<Point2> target);

  [[nodiscard]] const std::vector<Point2>& source() const noexcept { return source_; }
  [[nodiscard]] const std::vector<Point2>& target() const noexcept { return target_; }
  [[nodiscard]] std::size_t size() const noexcept { return source_.size(); }

private:
  std::vector<Point2> source_;
  std::vector<Point2> target_;
};

/// Harmonic map T = (x(ξ, η), y(ξ, η)), each coordinate a regularized Szegő-kernel solution
/// on the embedded sample points.
struct HarmonicMap {
  Embedding embed;
  SolutionCoefficients x_solution;
  SolutionCoefficients y_solution;
  double lambda = kDefaultFitLambda;
  Point2 source_centroid{};
  std::vector<Point2> target_boundary;  // closed polygon ∂Γ; empty = unrestricted
};

struct JacobianValue {
  double dx_dxi = 0.0;
  double dy_dxi = 0.0;
  double dx_deta = 0.0;
  double dy_deta = 0.0;
  double det = 0.0;
};

[[nodiscard]] HarmonicMap fit_map(const BoundaryCorrespondence& corr, double lambda = kDefaultFitLambda,
                                  double y_min = kDefaultEmbedYMin);

/// The two Dirichlet problems fit_map solves (x-coordinate first).
[[nodiscard]] std::pair<DirichletProblem, DirichletProblem> map_problems(const BoundaryCorrespondence& corr,
                                                                       const Embedding& embed, double lambda);

[[nodiscard]] Point2 apply(const HarmonicMap& map, Point2 p);

/// Even-odd rule; points exactly on an edge may land on either side.
[[nodiscard]] bool inside_polygon(std::span<const Point2> polygon, Point2 p);
[[nodiscard]] JacobianValue jacobian(const HarmonicMap& map, Point2 p);

class SingularJacobianError : public Error {
public:
  SingularJacobianError(const std::string& what, Point2 at) : Error(what), at_(at) {}
  [[nodiscard]] Point2 at() const noexcept { return at_; }

private:
  Point2 at_;
};

class NonConvergenceError : public Error {
public:
  NonConvergenceError(const std::string& what, Point2 best, double best_residual)
      : Error(what), best_(best), best_residual_(best_residual) {}
  [[nodiscard]] Point2 best() const noexcept { return best_; }
  [[nodiscard]] double best_residual() const noexcept { return best_residual_; }

private:
  Point2 best_;
  double best_residual_;
};

struct NewtonOptions {
  double tolerance = 1e-9;  // |apply(p) − target|, target units
  int max_iterations = 50;
  int max_halvings = 20;
  double det_floor = 1e-12;
};

/// Solves apply(map, p) = target by damped Newton iteration from `guess`.
///
/// Throws SingularJacobianError when det J < det_floor at an iterate and NonConvergenceError
/// (carrying the best iterate) when the tolerance is not reached within max_iterations.
[[nodiscard]] Point2 invert_point(const HarmonicMap& map, Point2 target, Point2 guess,
                                  const NewtonOptions& options = {});

struct WarpStats {
  std::size_t pixels = 0;
  std::size_t mapped = 0;          // inverse found and landed inside the source image
  std::size_t failed = 0;          // Newton raised (singular Jacobian or no convergence)
  std::size_t outside = 0;         // inverse found but outside the source image
  std::size_t uncovered = 0;       // output pixel center outside the target polygon
  double min_det = 0.0;            // over mapped pixels; 0 when none mapped
  double max_det = 0.0;
  double greyness_in = 0.0;        // Σ input pixels
  double greyness_out = 0.0;       // Σ output pixels
};

struct WarpResult {
  GreyImage image;
  WarpStats stats;
};

/// Forward distortion: out(q) = img(T⁻¹(q)) with piecewise-constant lookup.
///
/// The source image covers `source_view`; output pixel centers are laid out by `out`. Centers
/// outside the map's target polygon have no preimage and are left at 0 without inversion. Rows are
/// processed independently (optionally in parallel); within a row each inversion is seeded from
/// the previous pixel's inverse, the first pixel from the source centroid. Pixels whose inversion
/// fails or leaves the source are set to 0. Output does not depend on `threads`.
[[nodiscard]] WarpResult warp_image(const HarmonicMap& map, const GreyImage& img, const Viewport& source_view,
                                    const RasterGeometry& out, unsigned threads = 0);

/// Recovery: out(p) = distorted(T(p)). No inversion is needed in this direction.
[[nodiscard]] WarpResult recover_image(const HarmonicMap& forward_map, const GreyImage& distorted,
                                       const Viewport& distorted_view, const RasterGeometry& out,
                                       unsigned threads = 0);

}  // namespace hardy
