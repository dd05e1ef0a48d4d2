#pragma once

#include <span>
#include <string>

#include "hardy/dirichlet.hpp"
#include "hardy/raster.hpp"
#include "hardy/warp.hpp"

namespace hardy {

/// Shortest decimal that parses back to exactly `v` ("inf" / "-inf" / "nan" otherwise).
[[nodiscard]] std::string format_double(double v);

/// Regular nx × ny lattice over a viewport, including its edges (nx, ny >= 1; a single
/// column or row sits at the center).
struct ProbeGrid {
  Viewport view{};
  int nx = 11;
  int ny = 11;

  [[nodiscard]] Point2 at(int i, int j) const;
  [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
};

/// Header "j,x_j,y_j,A_j,lambda_j,c_j,residual_j", one row per sample.
[[nodiscard]] std::string solution_csv(const DirichletProblem& problem, const SolutionCoefficients& solution);

/// Header "lambda,max_residual,rms_residual,status", one row per schedule entry.
[[nodiscard]] std::string convergence_csv(std::span<const ContinuationStep> steps);

/// Header "xi,eta,x,y,det_j", one row per probe (η outer, ξ inner).
[[nodiscard]] std::string export_field_csv(const HarmonicMap& map, const ProbeGrid& grid);

/// Header "x,y,u,du_dx,du_dy" for a single solution over half-plane probes.
[[nodiscard]] std::string export_field_csv(const SolutionCoefficients& solution, const ProbeGrid& grid);

/// SVG 1.1 document drawing the image of the n × n grid over `source` under the map; one
/// <polyline> per grid line (n + 1 horizontal, then n + 1 vertical), `samples` vertices each.
[[nodiscard]] std::string export_svg_grid(const HarmonicMap& map, int n, const Viewport& source = {},
                                          int samples = 33);

/// Header "pixels,mapped,failed,outside,uncovered,min_det,max_det,greyness_in,greyness_out", one row.
[[nodiscard]] std::string warp_report_csv(const WarpStats& stats);

/// Header "mae,psnr,exact_match_fraction,total_greyness_a,total_greyness_b", one row.
[[nodiscard]] std::string metrics_csv(const ImageMetrics& m);

}  // namespace hardy
