#include "hardy/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <system_error>

namespace hardy {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw Error("format_double: conversion failed");
  return {buf, end};
}

Point2 ProbeGrid::at(int i, int j) const {
  const double tx = nx == 1 ? 0.5 : static_cast<double>(i) / (nx - 1);
  const double ty = ny == 1 ? 0.5 : static_cast<double>(j) / (ny - 1);
  return {view.x0 + tx * view.width(), view.y0 + ty * view.height()};
}

namespace {

void check_grid(const ProbeGrid& grid) {
  if (grid.nx < 1 || grid.ny < 1) throw InvalidArgument("probe grid: nx and ny must be >= 1");
}

}  // namespace

std::string solution_csv(const DirichletProblem& problem, const SolutionCoefficients& solution) {
  const auto res = boundary_residual(problem, solution);
  std::ostringstream out;
  out << "j,x_j,y_j,A_j,lambda_j,c_j,residual_j\n";
  for (std::size_t j = 0; j < problem.size(); ++j) {
    const auto& s = problem.samples()[j];
    out << j << ',' << format_double(s.point.x()) << ',' << format_double(s.point.y()) << ','
        << format_double(s.value) << ',' << format_double(s.weight) << ','
        << format_double(solution.coeffs()[static_cast<Eigen::Index>(j)]) << ','
        << format_double(res.per_sample[j]) << '\n';
  }
  return out.str();
}

std::string convergence_csv(std::span<const ContinuationStep> steps) {
  std::ostringstream out;
  out << "lambda,max_residual,rms_residual,status\n";
  for (const auto& s : steps) {
    out << format_double(s.lambda) << ',';
    if (s.solution) {
      out << format_double(s.residual.max) << ',' << format_double(s.residual.rms) << ",ok\n";
    } else {
      out << "nan,nan,conditioning_error\n";
    }
  }
  return out.str();
}

std::string export_field_csv(const HarmonicMap& map, const ProbeGrid& grid) {
  check_grid(grid);
  std::ostringstream out;
  out << "xi,eta,x,y,det_j\n";
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Point2 p = grid.at(i, j);
      const Point2 q = apply(map, p);
      const double det = jacobian(map, p).det;
      out << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(q.x) << ','
          << format_double(q.y) << ',' << format_double(det) << '\n';
    }
  }
  return out.str();
}

std::string export_field_csv(const SolutionCoefficients& solution, const ProbeGrid& grid) {
  check_grid(grid);
  std::ostringstream out;
  out << "x,y,u,du_dx,du_dy\n";
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Point2 p = grid.at(i, j);
      const UpperHalfPoint z(p.x, p.y);
      const Gradient g = evaluate_grad(solution, z);
      out << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(evaluate(solution, z)) << ','
          << format_double(g.dx) << ',' << format_double(g.dy) << '\n';
    }
  }
  return out.str();
}

std::string export_svg_grid(const HarmonicMap& map, int n, const Viewport& source, int samples) {
  if (n < 1) throw InvalidArgument("export_svg_grid: n must be >= 1");
  if (samples < 2) throw InvalidArgument("export_svg_grid: samples must be >= 2");
  std::vector<std::vector<Point2>> lines;
  for (int k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / n;
    std::vector<Point2> line;
    for (int s = 0; s < samples; ++s) {
      const double u = static_cast<double>(s) / (samples - 1);
      line.push_back(apply(map, {source.x0 + u * source.width(), source.y0 + t * source.height()}));
    }
    lines.push_back(std::move(line));
  }
  for (int k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / n;
    std::vector<Point2> line;
    for (int s = 0; s < samples; ++s) {
      const double u = static_cast<double>(s) / (samples - 1);
      line.push_back(apply(map, {source.x0 + t * source.width(), source.y0 + u * source.height()}));
    }
    lines.push_back(std::move(line));
  }
  std::vector<Point2> all;
  for (const auto& l : lines) all.insert(all.end(), l.begin(), l.end());
  const Viewport box = bounding_box(all);
  const double pad = 0.02 * std::max({box.width(), box.height(), 1e-12});

  // Plane y grows upwards, SVG y downwards: draw at (x, −y).
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << format_double(box.x0 - pad) << ' '
      << format_double(0.0 - box.y1 - pad) << ' ' << format_double(box.width() + 2 * pad) << ' '
      << format_double(box.height() + 2 * pad) << "\">\n"
      << "<g fill=\"none\" stroke=\"black\" stroke-width=\"" << format_double(0.003 * std::max(box.width(), box.height()))
      << "\">\n";
  for (const auto& l : lines) {
    out << "<polyline points=\"";
    for (std::size_t s = 0; s < l.size(); ++s) {
      if (s > 0) out << ' ';
      out << format_double(l[s].x) << ',' << format_double(0.0 - l[s].y);
    }
    out << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string warp_report_csv(const WarpStats& s) {
  std::ostringstream out;
  out << "pixels,mapped,failed,outside,uncovered,min_det,max_det,greyness_in,greyness_out\n"
      << s.pixels << ',' << s.mapped << ',' << s.failed << ',' << s.outside << ',' << s.uncovered << ',' << format_double(s.min_det) << ','
      << format_double(s.max_det) << ',' << format_double(s.greyness_in) << ',' << format_double(s.greyness_out)
      << '\n';
  return out.str();
}

std::string metrics_csv(const ImageMetrics& m) {
  std::ostringstream out;
  out << "mae,psnr,exact_match_fraction,total_greyness_a,total_greyness_b\n"
      << format_double(m.mae) << ',' << format_double(m.psnr) << ',' << format_double(m.exact_match_fraction) << ','
      << format_double(m.total_greyness_a) << ',' << format_double(m.total_greyness_b) << '\n';
  return out.str();
}

}  // namespace hardy
