#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "hardy/raster.hpp"
#include "hardy/report.hpp"

using namespace hardy;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::vector<std::vector<Point2>> polylines(const std::string& svg) {
  std::vector<std::vector<Point2>> out;
  const std::regex re("<polyline points=\"([^\"]*)\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
    std::vector<Point2> line;
    for (const auto& pair : split((*it)[1].str(), ' ')) {
      const auto xy = split(pair, ',');
      line.push_back({std::stod(xy.at(0)), -std::stod(xy.at(1))});
    }
    out.push_back(std::move(line));
  }
  return out;
}

}  // namespace

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-2.0), "-2");
  EXPECT_EQ(format_double(INFINITY), "inf");
  EXPECT_EQ(format_double(-INFINITY), "-inf");
  EXPECT_EQ(format_double(NAN), "nan");
  const double v = 1.0 / 3.0;
  EXPECT_EQ(std::stod(format_double(v)), v);
}

TEST(SolutionCsv, OneRowPerSample) {
  std::vector<BoundarySample> s;
  for (int j = 0; j < 5; ++j) s.emplace_back(UpperHalfPoint(j, 1.0), j * 0.5, 0.2);
  const DirichletProblem prob(s, 0.01);
  const auto sol = solve_recursive(prob);
  const auto rows = lines_of(solution_csv(prob, sol));
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], "j,x_j,y_j,A_j,lambda_j,c_j,residual_j");
  const auto res = boundary_residual(prob, sol);
  for (std::size_t j = 0; j < 5; ++j) {
    const auto f = split(rows[j + 1], ',');
    ASSERT_EQ(f.size(), 7u);
    EXPECT_EQ(std::stoul(f[0]), j);
    EXPECT_EQ(std::stod(f[5]), sol.coeffs()(static_cast<Eigen::Index>(j)));
    EXPECT_EQ(std::stod(f[6]), res.per_sample[j]);
  }
}

TEST(ConvergenceCsv, StatusColumn) {
  ContinuationStep ok{0.1, std::nullopt, {0.5, 0.25, {}}, ""};
  ok.solution.emplace(std::vector<UpperHalfPoint>{{0, 1}}, Eigen::VectorXd::Ones(1));
  const ContinuationStep bad{0.01, std::nullopt, {}, "collapsed"};
  const std::vector<ContinuationStep> steps{ok, bad};
  const auto rows = lines_of(convergence_csv(steps));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], "lambda,max_residual,rms_residual,status");
  EXPECT_EQ(rows[1], "0.1,0.5,0.25,ok");
  EXPECT_EQ(rows[2], "0.01,nan,nan,conditioning_error");
}

TEST(FieldCsv, DetColumnMatchesJacobian) {
  const auto m = fit_map(quadratic_press(0.25));
  const ProbeGrid g{Viewport{0.05, 0.05, 0.95, 0.95}, 7, 5};
  const auto rows = lines_of(export_field_csv(m, g));
  ASSERT_EQ(rows.size(), 1u + 35u);
  EXPECT_EQ(rows[0], "xi,eta,x,y,det_j");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto f = split(rows[r], ',');
    ASSERT_EQ(f.size(), 5u);
    const Point2 p{std::stod(f[0]), std::stod(f[1])};
    EXPECT_EQ(std::stod(f[4]), jacobian(m, p).det);
    EXPECT_EQ(std::stod(f[2]), apply(m, p).x);
  }
}

TEST(FieldCsv, SolutionField) {
  const auto sol = solve_recursive(DirichletProblem({BoundarySample({0, 1}, 1.0, 1.0)}, 0.01));
  const auto rows = lines_of(export_field_csv(sol, ProbeGrid{Viewport{-1, 0.5, 1, 1.5}, 3, 2}));
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], "x,y,u,du_dx,du_dy");
  EXPECT_THROW((void)export_field_csv(sol, ProbeGrid{Viewport{}, 0, 2}), InvalidArgument);
}

TEST(Svg, IdentityGridIsAxisAligned) {
  const auto m = fit_map(quadratic_press(0.0));
  const int n = 8;
  const auto svg = export_svg_grid(m, n);
  EXPECT_NE(svg.find("version=\"1.1\""), std::string::npos);
  const auto lines = polylines(svg);
  ASSERT_EQ(lines.size(), 2u * (n + 1));
  for (int k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / n;
    for (auto p : lines[static_cast<std::size_t>(k)]) EXPECT_NEAR(p.y, t, 0.02);
    for (auto p : lines[static_cast<std::size_t>(n + 1 + k)]) EXPECT_NEAR(p.x, t, 0.02);
  }
  for (const auto& l : lines) EXPECT_EQ(l.size(), 33u);
}

TEST(Svg, PressGridSags) {
  const auto m = fit_map(quadratic_press(0.25));
  const auto lines = polylines(export_svg_grid(m, 4, Viewport{}, 5));
  const auto& top = lines[4];
  // The top edge is the worst-fitted part of the boundary; only its shape is checked here.
  EXPECT_LT(top[2].y, 0.8);
  EXPECT_GT(top[0].y, 0.9);
  EXPECT_LT(top[2].y, top[1].y);
  EXPECT_NEAR(top[1].y, top[3].y, 0.01);
}

TEST(WarpCsv, SingleRow) {
  WarpStats s;
  s.pixels = 4;
  s.mapped = 3;
  s.failed = 1;
  s.min_det = 0.5;
  s.max_det = 1.5;
  s.greyness_in = 10;
  s.greyness_out = 9;
  const auto rows = lines_of(warp_report_csv(s));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "pixels,mapped,failed,outside,uncovered,min_det,max_det,greyness_in,greyness_out");
  EXPECT_EQ(rows[1], "4,3,1,0,0,0.5,1.5,10,9");
}

TEST(MetricsCsv, Header) {
  const auto img = make_grid_image(2, 8);
  const auto rows = lines_of(metrics_csv(metrics(img, img)));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "mae,psnr,exact_match_fraction,total_greyness_a,total_greyness_b");
  EXPECT_EQ(split(rows[1], ',').at(1), "inf");
}
