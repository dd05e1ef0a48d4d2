#include "hardy/warp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

namespace hardy {

UpperHalfPoint Embedding::to_halfplane(Point2 p) const {
  const Point2 q = lift(p);
  if (!(q.y > 0.0) || !std::isfinite(q.x) || !std::isfinite(q.y)) {
    std::ostringstream msg;
    msg << "point (" << p.x << ", " << p.y << ") lies below the lifted real axis";
    throw DomainError(msg.str());
  }
  return {q.x, q.y};
}

Embedding embed_to_halfplane(std::span<const Point2> points, double y_min) {
  if (!(y_min > 0.0) || !std::isfinite(y_min)) throw InvalidArgument("embed_to_halfplane: y_min must be > 0");
  const Viewport box = bounding_box(points);
  const double side = std::max(box.width(), box.height());
  if (!(side > 0.0) || !std::isfinite(side)) {
    throw InvalidArgument("embed_to_halfplane: degenerate bounding box (all points identical)");
  }
  return Embedding{1.0 / side, Point2{box.x0, box.y0}, y_min};
}

BoundaryCorrespondence::BoundaryCorrespondence(std::vector<Point2> source, std::vector<Point2> target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_.size() != target_.size()) {
    throw InvalidArgument("BoundaryCorrespondence: source and target lengths differ");
  }
  if (source_.size() < 3) throw InvalidArgument("BoundaryCorrespondence: at least 3 sample pairs are required");
  for (const auto& p : source_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidArgument("BoundaryCorrespondence: non-finite point");
  }
  for (const auto& p : target_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidArgument("BoundaryCorrespondence: non-finite point");
  }
  std::vector<Point2> sorted = source_;
  std::sort(sorted.begin(), sorted.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("BoundaryCorrespondence: source points must be pairwise distinct");
  }
}

std::pair<DirichletProblem, DirichletProblem> map_problems(const BoundaryCorrespondence& corr, const Embedding& embed,
                                                           double lambda) {
  const auto weights = arc_length_weights(corr.source());
  std::vector<BoundarySample> xs;
  std::vector<BoundarySample> ys;
  xs.reserve(corr.size());
  ys.reserve(corr.size());
  for (std::size_t j = 0; j < corr.size(); ++j) {
    const UpperHalfPoint z = embed.to_halfplane(corr.source()[j]);
    xs.emplace_back(z, corr.target()[j].x, weights[j]);
    ys.emplace_back(z, corr.target()[j].y, weights[j]);
  }
  return {DirichletProblem(std::move(xs), lambda), DirichletProblem(std::move(ys), lambda)};
}

HarmonicMap fit_map(const BoundaryCorrespondence& corr, double lambda, double y_min) {
  const Embedding embed = embed_to_halfplane(corr.source(), y_min);
  auto [px, py] = map_problems(corr, embed, lambda);
  return HarmonicMap{embed, solve_recursive(px), solve_recursive(py), lambda,
                     bounding_box(corr.source()).center(), corr.target()};
}

bool inside_polygon(std::span<const Point2> polygon, Point2 p) {
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2 a = polygon[i];
    const Point2 b = polygon[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) inside = !inside;
  }
  return inside;
}

Point2 apply(const HarmonicMap& map, Point2 p) {
  const UpperHalfPoint z = map.embed.to_halfplane(p);
  return {evaluate(map.x_solution, z), evaluate(map.y_solution, z)};
}

JacobianValue jacobian(const HarmonicMap& map, Point2 p) {
  const UpperHalfPoint z = map.embed.to_halfplane(p);
  const Gradient gx = evaluate_grad(map.x_solution, z);
  const Gradient gy = evaluate_grad(map.y_solution, z);
  const double s = map.embed.scale;
  JacobianValue j;
  j.dx_dxi = s * gx.dx;
  j.dx_deta = s * gx.dy;
  j.dy_dxi = s * gy.dx;
  j.dy_deta = s * gy.dy;
  j.det = j.dx_dxi * j.dy_deta - j.dx_deta * j.dy_dxi;
  return j;
}

namespace {

// Residual norm at p, or +inf when p cannot be lifted into the half-plane.
double residual_at(const HarmonicMap& map, Point2 p, Point2 target) {
  const Point2 lifted = map.embed.lift(p);
  if (!(lifted.y > 0.0) || !std::isfinite(lifted.x) || !std::isfinite(lifted.y)) {
    return std::numeric_limits<double>::infinity();
  }
  return norm(apply(map, p) - target);
}

}  // namespace

Point2 invert_point(const HarmonicMap& map, Point2 target, Point2 guess, const NewtonOptions& options) {
  Point2 p = guess;
  double res = norm(apply(map, p) - target);
  for (int it = 0; it < options.max_iterations; ++it) {
    if (res <= options.tolerance) return p;
    const JacobianValue jac = jacobian(map, p);
    if (!(jac.det >= options.det_floor)) {
      std::ostringstream msg;
      msg << "invert_point: Jacobian determinant " << jac.det << " below " << options.det_floor << " at (" << p.x
          << ", " << p.y << ")";
      throw SingularJacobianError(msg.str(), p);
    }
    const Point2 r = apply(map, p) - target;
    const Point2 step{(jac.dy_deta * r.x - jac.dx_deta * r.y) / jac.det,
                      (-jac.dy_dxi * r.x + jac.dx_dxi * r.y) / jac.det};
    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h <= options.max_halvings; ++h, t *= 0.5) {
      const Point2 trial = p - t * step;
      const double trial_res = residual_at(map, trial, target);
      if (trial_res < res) {
        p = trial;
        res = trial_res;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (res <= options.tolerance) return p;
  std::ostringstream msg;
  msg << "invert_point: no convergence, best residual " << res;
  throw NonConvergenceError(msg.str(), p, res);
}

namespace {

struct RowStats {
  std::size_t mapped = 0;
  std::size_t failed = 0;
  std::size_t outside = 0;
  std::size_t uncovered = 0;
  double min_det = std::numeric_limits<double>::infinity();
  double max_det = -std::numeric_limits<double>::infinity();
  double greyness = 0.0;
};

template <typename RowFn>
std::vector<RowStats> for_each_row(int rows, unsigned threads, RowFn&& fn) {
  std::vector<RowStats> stats(static_cast<std::size_t>(rows));
  unsigned n = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  n = std::min<unsigned>(n, static_cast<unsigned>(rows));
  if (n <= 1) {
    for (int r = 0; r < rows; ++r) stats[static_cast<std::size_t>(r)] = fn(r);
    return stats;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) {
      pool.emplace_back([&, t] {
        for (int r = static_cast<int>(t); r < rows; r += static_cast<int>(n)) {
          stats[static_cast<std::size_t>(r)] = fn(r);
        }
      });
    }
  }
  return stats;
}

WarpStats merge(const std::vector<RowStats>& rows, std::size_t pixels, double greyness_in) {
  WarpStats out;
  out.pixels = pixels;
  out.greyness_in = greyness_in;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    out.mapped += r.mapped;
    out.failed += r.failed;
    out.outside += r.outside;
    out.uncovered += r.uncovered;
    out.greyness_out += r.greyness;
    lo = std::min(lo, r.min_det);
    hi = std::max(hi, r.max_det);
  }
  if (out.mapped > 0) {
    out.min_det = lo;
    out.max_det = hi;
  }
  return out;
}

double total_greyness(const GreyImage& img) {
  const auto px = img.pixels();
  return std::accumulate(px.begin(), px.end(), 0.0);
}

void check_geometry(const RasterGeometry& g) {
  if (g.width <= 0 || g.height <= 0) throw InvalidArgument("raster geometry: dimensions must be positive");
  if (!(g.view.width() > 0.0) || !(g.view.height() > 0.0)) {
    throw InvalidArgument("raster geometry: viewport must have positive extent");
  }
}

}  // namespace

WarpResult warp_image(const HarmonicMap& map, const GreyImage& img, const Viewport& source_view,
                      const RasterGeometry& out, unsigned threads) {
  check_geometry(out);
  const RasterGeometry src{img.width(), img.height(), source_view};
  check_geometry(src);
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(out.width) * static_cast<std::size_t>(out.height), 0);

  auto row_fn = [&](int row) {
    RowStats st;
    Point2 seed = map.source_centroid;
    for (int col = 0; col < out.width; ++col) {
      const Point2 q = out.pixel_center(col, row);
      if (!map.target_boundary.empty() && !inside_polygon(map.target_boundary, q)) {
        ++st.uncovered;
        continue;
      }
      Point2 p;
      try {
        p = invert_point(map, q, seed);
      } catch (const Error&) {
        ++st.failed;
        seed = map.source_centroid;
        continue;
      }
      seed = p;
      int sc = 0;
      int sr = 0;
      if (!src.locate(p, sc, sr)) {
        ++st.outside;
        continue;
      }
      const std::uint8_t v = img.at(sc, sr);
      pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(out.width) + static_cast<std::size_t>(col)] = v;
      ++st.mapped;
      st.greyness += v;
      const double det = jacobian(map, p).det;
      st.min_det = std::min(st.min_det, det);
      st.max_det = std::max(st.max_det, det);
    }
    return st;
  };
  const auto rows = for_each_row(out.height, threads, row_fn);
  const std::size_t count = pixels.size();
  return WarpResult{GreyImage(out.width, out.height, img.levels(), std::move(pixels)),
                    merge(rows, count, total_greyness(img))};
}

WarpResult recover_image(const HarmonicMap& forward_map, const GreyImage& distorted, const Viewport& distorted_view,
                         const RasterGeometry& out, unsigned threads) {
  check_geometry(out);
  const RasterGeometry dist{distorted.width(), distorted.height(), distorted_view};
  check_geometry(dist);
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(out.width) * static_cast<std::size_t>(out.height), 0);

  auto row_fn = [&](int row) {
    RowStats st;
    for (int col = 0; col < out.width; ++col) {
      const Point2 p = out.pixel_center(col, row);
      Point2 q;
      try {
        q = apply(forward_map, p);
      } catch (const DomainError&) {
        ++st.failed;
        continue;
      }
      int dc = 0;
      int dr = 0;
      if (!dist.locate(q, dc, dr)) {
        ++st.outside;
        continue;
      }
      const std::uint8_t v = distorted.at(dc, dr);
      pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(out.width) + static_cast<std::size_t>(col)] = v;
      ++st.mapped;
      st.greyness += v;
      const double det = jacobian(forward_map, p).det;
      st.min_det = std::min(st.min_det, det);
      st.max_det = std::max(st.max_det, det);
    }
    return st;
  };
  const auto rows = for_each_row(out.height, threads, row_fn);
  const std::size_t count = pixels.size();
  return WarpResult{GreyImage(out.width, out.height, distorted.levels(), std::move(pixels)),
                    merge(rows, count, total_greyness(distorted))};
}

}  // namespace hardy
