#include "hardy/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include "hardy/io.hpp"
#include "hardy/raster.hpp"
#include "hardy/report.hpp"
#include "hardy/warp.hpp"

namespace hardy::cli {

namespace {

struct RunConfig {
  std::string problem_path;
  std::string corr_path;
  std::string image_path;
  std::string second_image_path;
  std::string out_path;
  std::string report_path;
  std::string field_path;
  std::string outdir = ".";
  std::string schedule;
  std::string pattern = "grid";
  std::optional<double> lambda;
  double alpha = 0.25;
  double interior = 0.9;
  int grid_n = 8;
  int size = 256;
  int probe_n = 21;
  unsigned threads = 0;
};

// Failures tagged with the exit code they map to.
struct Failure {
  int code;
  std::string message;
};

std::vector<double> parse_schedule(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw Failure{kInputError, "--schedule: empty entry"};
    const std::string token = item.substr(first, last - first + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw Failure{kInputError, "--schedule: cannot parse \"" + token + "\""};
    }
    out.push_back(v);
  }
  if (out.empty()) throw Failure{kInputError, "--schedule: no values"};
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (!(out[k] > 0.0)) throw Failure{kInputError, "--schedule: values must be > 0"};
    if (k > 0 && !(out[k] < out[k - 1])) throw Failure{kInputError, "--schedule: values must be strictly decreasing"};
  }
  return out;
}

double settle_lambda(std::optional<double> flag, std::optional<double> file, std::optional<double> fallback,
                     std::ostream& err) {
  if (flag && file) {
    err << "note: --lambda " << format_double(*flag) << " overrides file value " << format_double(*file) << '\n';
  }
  if (flag) return *flag;
  if (file) return *file;
  if (fallback) return *fallback;
  throw Failure{kInputError, "problem: missing field \"lambda\" (and no --lambda given)"};
}

DirichletProblem load_problem(const RunConfig& cfg, std::ostream& err) {
  const ProblemFile file = parse_problem_json(read_text_file(cfg.problem_path));
  const double lambda = settle_lambda(cfg.lambda, file.lambda, {}, err);
  return build_problem(file, lambda);
}

HarmonicMap load_map(const RunConfig& cfg, std::ostream& err) {
  const CorrespondenceFile file = parse_correspondence_json(read_text_file(cfg.corr_path));
  const double lambda = settle_lambda(cfg.lambda, file.lambda, kDefaultFitLambda, err);
  const BoundaryCorrespondence corr(file.source, file.target);
  try {
    return fit_map(corr, lambda);
  } catch (const Error& e) {
    throw Failure{kFitError, std::string("map fitting failed: ") + e.what()};
  }
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const DirichletProblem problem = load_problem(cfg, err);
  SolutionCoefficients solution = [&] {
    try {
      return solve_recursive(problem);
    } catch (const ConditioningError& e) {
      throw Failure{kSolverError, e.what()};
    }
  }();
  const Residual res = boundary_residual(problem, solution);
  if (!cfg.out_path.empty()) write_text_file(cfg.out_path, solution_csv(problem, solution));
  if (!cfg.field_path.empty()) {
    const auto box = bounding_box([&] {
      std::vector<Point2> pts;
      for (const auto& s : problem.samples()) pts.push_back({s.point.x(), s.point.y()});
      return pts;
    }());
    write_text_file(cfg.field_path, export_field_csv(solution, ProbeGrid{box, cfg.probe_n, cfg.probe_n}));
  }
  out << "residual max=" << format_double(res.max) << " rms=" << format_double(res.rms) << '\n';
  return kOk;
}

int cmd_convergence(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto schedule = parse_schedule(cfg.schedule);
  // The schedule supplies every λ; a file value is ignored.
  const DirichletProblem problem = build_problem(parse_problem_json(read_text_file(cfg.problem_path)), schedule.front());
  const auto steps = continuation(problem, schedule);
  if (!cfg.out_path.empty()) write_text_file(cfg.out_path, convergence_csv(steps));
  bool any_failed = false;
  for (const auto& s : steps) {
    out << "lambda=" << format_double(s.lambda);
    if (s.solution) {
      out << " residual max=" << format_double(s.residual.max) << " rms=" << format_double(s.residual.rms) << '\n';
    } else {
      out << " failed\n";
      err << "lambda " << format_double(s.lambda) << ": " << s.error << '\n';
      any_failed = true;
    }
  }
  return any_failed ? kSolverError : kOk;
}

void print_pixels(std::ostream& out, const WarpStats& st) {
  out << "pixels=" << st.pixels << " failed=" << st.failed << '\n';
}

int cmd_warp(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const GreyImage img = load_pgm(cfg.image_path);
  const HarmonicMap map = load_map(cfg, err);
  const WarpResult res = warp_image(map, img, Viewport{}, unit_geometry(img), cfg.threads);
  save_pgm(res.image, cfg.out_path);
  if (!cfg.report_path.empty()) write_text_file(cfg.report_path, warp_report_csv(res.stats));
  if (res.stats.failed > 0) err << "warning: " << res.stats.failed << " pixels failed to invert\n";
  print_pixels(out, res.stats);
  return kOk;
}

int cmd_recover(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const GreyImage img = load_pgm(cfg.image_path);
  const HarmonicMap map = load_map(cfg, err);
  const WarpResult res = recover_image(map, img, Viewport{}, unit_geometry(img), cfg.threads);
  save_pgm(res.image, cfg.out_path);
  if (!cfg.report_path.empty()) write_text_file(cfg.report_path, warp_report_csv(res.stats));
  print_pixels(out, res.stats);
  return kOk;
}

int cmd_grid_demo(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::filesystem::create_directories(cfg.outdir);
  const std::filesystem::path dir(cfg.outdir);
  const GreyImage original =
      cfg.pattern == "portrait" ? make_portrait_image(cfg.size) : make_grid_image(cfg.grid_n, cfg.size);
  const BoundaryCorrespondence corr = quadratic_press(cfg.alpha);
  const double lambda = cfg.lambda.value_or(kDefaultFitLambda);
  const HarmonicMap map = [&] {
    try {
      return fit_map(corr, lambda);
    } catch (const Error& e) {
      throw Failure{kFitError, std::string("map fitting failed: ") + e.what()};
    }
  }();
  const WarpResult distorted = warp_image(map, original, Viewport{}, unit_geometry(original), cfg.threads);
  const WarpResult recovered =
      recover_image(map, distorted.image, Viewport{}, unit_geometry(original), cfg.threads);
  const ImageMetrics m =
      metrics(original, recovered.image, central_region(original.width(), original.height(), cfg.interior));

  save_pgm(original, (dir / "original.pgm").string());
  save_pgm(distorted.image, (dir / "distorted.pgm").string());
  save_pgm(recovered.image, (dir / "recovered.pgm").string());
  write_text_file((dir / "grid.svg").string(), export_svg_grid(map, cfg.grid_n));
  write_text_file((dir / "metrics.csv").string(), metrics_csv(m));
  write_text_file((dir / "warp.csv").string(), warp_report_csv(distorted.stats));
  if (distorted.stats.failed > 0) err << "warning: " << distorted.stats.failed << " pixels failed to invert\n";
  print_pixels(out, distorted.stats);
  out << "interior exact_match=" << format_double(m.exact_match_fraction) << " mae=" << format_double(m.mae) << '\n';
  return kOk;
}

int cmd_make_grid(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  save_pgm(make_grid_image(cfg.grid_n, cfg.size), cfg.out_path);
  out << "wrote " << cfg.out_path << '\n';
  return kOk;
}

int cmd_make_press(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto corr = quadratic_press(cfg.alpha);
  std::ostringstream doc;
  auto points = [&](const std::vector<Point2>& pts) {
    doc << '[';
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i > 0) doc << ',';
      doc << '[' << format_double(pts[i].x) << ',' << format_double(pts[i].y) << ']';
    }
    doc << ']';
  };
  doc << "{\"source\":";
  points(corr.source());
  doc << ",\"target\":";
  points(corr.target());
  if (cfg.lambda) doc << ",\"lambda\":" << format_double(*cfg.lambda);
  doc << "}\n";
  write_text_file(cfg.out_path, doc.str());
  out << "wrote " << cfg.out_path << '\n';
  return kOk;
}

int cmd_metrics(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const GreyImage a = load_pgm(cfg.image_path);
  const GreyImage b = load_pgm(cfg.second_image_path);
  const ImageMetrics m = metrics(a, b, central_region(a.width(), a.height(), cfg.interior));
  if (!cfg.out_path.empty()) write_text_file(cfg.out_path, metrics_csv(m));
  out << "exact_match=" << format_double(m.exact_match_fraction) << " mae=" << format_double(m.mae)
      << " psnr=" << format_double(m.psnr) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hardy-space Dirichlet solver and harmonic image warping", "hardy"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_lambda = [&](CLI::App* sub) {
    sub->add_option("--lambda", cfg.lambda, "Regularization parameter (overrides the file value)")
        ->check(CLI::PositiveNumber);
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "Worker threads for per-pixel loops (0 = hardware)");
  };

  auto* solve = app.add_subcommand("solve", "Solve a discrete Dirichlet problem");
  solve->add_option("problem", cfg.problem_path, "Problem JSON")->required();
  solve->add_option("--out", cfg.out_path, "Solution CSV");
  solve->add_option("--field", cfg.field_path, "Optional CSV of u and its gradient over the sample bounding box");
  solve->add_option("--probe-n", cfg.probe_n, "Probe grid density for --field")->check(CLI::PositiveNumber);
  add_lambda(solve);

  auto* conv = app.add_subcommand("convergence", "Residuals along a decreasing lambda schedule");
  conv->add_option("problem", cfg.problem_path, "Problem JSON")->required();
  conv->add_option("--schedule", cfg.schedule, "Comma-separated, strictly decreasing lambdas")->required();
  conv->add_option("--out", cfg.out_path, "Report CSV");

  auto* warp = app.add_subcommand("warp", "Distort an image by the fitted harmonic map");
  warp->add_option("corr", cfg.corr_path, "Correspondence JSON")->required();
  warp->add_option("image", cfg.image_path, "Input PGM")->required();
  warp->add_option("--out", cfg.out_path, "Output PGM")->required();
  warp->add_option("--report", cfg.report_path, "Warp summary CSV");
  add_lambda(warp);
  add_threads(warp);

  auto* recover = app.add_subcommand("recover", "Undo a distortion produced by the fitted map");
  recover->add_option("corr", cfg.corr_path, "Correspondence JSON")->required();
  recover->add_option("image", cfg.image_path, "Distorted PGM")->required();
  recover->add_option("--out", cfg.out_path, "Output PGM")->required();
  recover->add_option("--report", cfg.report_path, "Recovery summary CSV");
  add_lambda(recover);
  add_threads(recover);

  auto* demo = app.add_subcommand("grid-demo", "Grid (or portrait) through quadratic press, warp and recovery");
  demo->add_option("--n", cfg.grid_n, "Grid cells per side")->check(CLI::PositiveNumber);
  demo->add_option("--alpha", cfg.alpha, "Press strength in [0, 1)");
  demo->add_option("--size", cfg.size, "Image side in pixels")->check(CLI::PositiveNumber);
  demo->add_option("--outdir", cfg.outdir, "Output directory (created if absent)");
  demo->add_option("--pattern", cfg.pattern, "Test picture")->check(CLI::IsMember({"grid", "portrait"}));
  demo->add_option("--interior", cfg.interior, "Side fraction of the central metrics region");
  add_lambda(demo);
  add_threads(demo);

  auto* make_grid = app.add_subcommand("make-grid", "Write the n x n grid test image");
  make_grid->add_option("--n", cfg.grid_n, "Grid cells per side")->check(CLI::PositiveNumber);
  make_grid->add_option("--size", cfg.size, "Image side in pixels")->check(CLI::PositiveNumber);
  make_grid->add_option("--out", cfg.out_path, "Output PGM")->required();

  auto* make_press = app.add_subcommand("make-press", "Write the quadratic-press correspondence JSON");
  make_press->add_option("--alpha", cfg.alpha, "Press strength in [0, 1)");
  make_press->add_option("--out", cfg.out_path, "Output JSON")->required();
  add_lambda(make_press);

  auto* cmp = app.add_subcommand("metrics", "Compare two PGM images over their central region");
  cmp->add_option("a", cfg.image_path, "First PGM")->required();
  cmp->add_option("b", cfg.second_image_path, "Second PGM")->required();
  cmp->add_option("--interior", cfg.interior, "Side fraction of the central region");
  cmp->add_option("--out", cfg.out_path, "Metrics CSV");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (*solve) return cmd_solve(cfg, out, err);
    if (*conv) return cmd_convergence(cfg, out, err);
    if (*warp) return cmd_warp(cfg, out, err);
    if (*recover) return cmd_recover(cfg, out, err);
    if (*demo) return cmd_grid_demo(cfg, out, err);
    if (*make_grid) return cmd_make_grid(cfg, out, err);
    if (*make_press) return cmd_make_press(cfg, out, err);
    if (*cmp) return cmd_metrics(cfg, out, err);
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const ConditioningError& e) {
    err << "error: " << e.what() << '\n';
    return kSolverError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace hardy::cli
