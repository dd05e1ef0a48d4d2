#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "hardy/dirichlet.hpp"
#include "hardy/kernel.hpp"
#include "hardy/raster.hpp"
#include "hardy/warp.hpp"

namespace py = pybind11;
using namespace hardy;

namespace {

UpperHalfPoint to_point(std::complex<double> z) { return {z.real(), z.imag()}; }

Point2 to_planar(const std::pair<double, double>& p) { return {p.first, p.second}; }
py::tuple from_planar(Point2 p) { return py::make_tuple(p.x, p.y); }

std::vector<Point2> to_planar_list(const std::vector<std::pair<double, double>>& pts) {
  std::vector<Point2> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(to_planar(p));
  return out;
}

using ImageArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

GreyImage to_image(const ImageArray& arr, int levels) {
  if (arr.ndim() != 2) throw InvalidArgument("image array must be 2-D (rows, cols)");
  const auto rows = static_cast<int>(arr.shape(0));
  const auto cols = static_cast<int>(arr.shape(1));
  std::vector<std::uint8_t> px(arr.data(), arr.data() + arr.size());
  return {cols, rows, levels, std::move(px)};
}

ImageArray from_image(const GreyImage& img) {
  ImageArray arr({img.height(), img.width()});
  std::memcpy(arr.mutable_data(), img.pixels().data(), img.pixels().size());
  return arr;
}

py::dict stats_dict(const WarpStats& s) {
  py::dict d;
  d["pixels"] = s.pixels;
  d["mapped"] = s.mapped;
  d["failed"] = s.failed;
  d["outside"] = s.outside;
  d["uncovered"] = s.uncovered;
  d["min_det"] = s.min_det;
  d["max_det"] = s.max_det;
  d["greyness_in"] = s.greyness_in;
  d["greyness_out"] = s.greyness_out;
  return d;
}

py::dict residual_dict(const Residual& r) {
  py::dict d;
  d["max"] = r.max;
  d["rms"] = r.rms;
  d["per_sample"] = r.per_sample;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tikhonov-regularized Szegő-kernel Dirichlet solver and harmonic image warping";

  static py::exception<Error> base_error(m, "HardyError");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<ConditioningError>(m, "ConditioningError", base_error.ptr());
  py::register_exception<DomainError>(m, "DomainError", base_error.ptr());
  py::register_exception<SingularJacobianError>(m, "SingularJacobianError", base_error.ptr());
  py::register_exception<NonConvergenceError>(m, "NonConvergenceError", base_error.ptr());
  py::register_exception<PgmError>(m, "PgmError", base_error.ptr());

  // Kernel. Points of the upper half-plane are Python complex numbers.
  m.def("szego", [](std::complex<double> z, std::complex<double> w) { return szego(to_point(z), to_point(w)); },
        py::arg("z"), py::arg("w"), "K(z, w) = (i / 2π) / (z − conj(w))");
  m.def("szego_re", [](std::complex<double> z, std::complex<double> w) { return szego_re(to_point(z), to_point(w)); },
        py::arg("z"), py::arg("w"));
  m.def(
      "szego_re_grad",
      [](std::complex<double> z, std::complex<double> w) {
        const auto g = szego_re_grad(to_point(z), to_point(w));
        return py::make_tuple(g.dx, g.dy);
      },
      py::arg("z"), py::arg("w"));

  // Dirichlet solver.
  py::class_<BoundarySample>(m, "BoundarySample")
      .def(py::init([](std::complex<double> z, double value, double weight) {
             return BoundarySample(to_point(z), value, weight);
           }),
           py::arg("z"), py::arg("value"), py::arg("weight"))
      .def_property_readonly("z", [](const BoundarySample& s) { return s.point.z(); })
      .def_readonly("value", &BoundarySample::value)
      .def_readonly("weight", &BoundarySample::weight);

  py::class_<DirichletProblem>(m, "DirichletProblem")
      .def(py::init<std::vector<BoundarySample>, double>(), py::arg("samples"), py::arg("lam"))
      .def_property_readonly("lam", &DirichletProblem::lambda)
      .def_property_readonly("samples", &DirichletProblem::samples)
      .def("__len__", &DirichletProblem::size)
      .def("with_lambda", &DirichletProblem::with_lambda, py::arg("lam"));

  py::class_<SolutionCoefficients>(m, "SolutionCoefficients")
      .def_property_readonly("coeffs", &SolutionCoefficients::coeffs)
      .def_property_readonly("points", [](const SolutionCoefficients& s) {
        std::vector<std::complex<double>> out;
        for (const auto& p : s.points()) out.push_back(p.z());
        return out;
      });

  m.def("gram_matrix", py::overload_cast<const DirichletProblem&>(&gram_matrix), py::arg("problem"));
  m.def("solve_recursive", &solve_recursive, py::arg("problem"));
  m.def("solve_dense_oracle", &solve_dense_oracle, py::arg("problem"));
  m.def(
      "evaluate", [](const SolutionCoefficients& s, std::complex<double> z) { return evaluate(s, to_point(z)); },
      py::arg("solution"), py::arg("z"));
  m.def(
      "evaluate_grad",
      [](const SolutionCoefficients& s, std::complex<double> z) {
        const auto g = evaluate_grad(s, to_point(z));
        return py::make_tuple(g.dx, g.dy);
      },
      py::arg("solution"), py::arg("z"));
  m.def(
      "boundary_residual",
      [](const DirichletProblem& p, const SolutionCoefficients& s) { return residual_dict(boundary_residual(p, s)); },
      py::arg("problem"), py::arg("solution"));
  m.def(
      "continuation",
      [](const DirichletProblem& p, const std::vector<double>& schedule) {
        py::list out;
        for (const auto& step : continuation(p, schedule)) {
          py::dict d = residual_dict(step.residual);
          d["lam"] = step.lambda;
          d["solution"] = step.solution ? py::cast(*step.solution) : py::none();
          d["error"] = step.error;
          out.append(d);
        }
        return out;
      },
      py::arg("problem"), py::arg("schedule"));

  // Harmonic maps. Planar points are (x, y) tuples.
  py::class_<BoundaryCorrespondence>(m, "BoundaryCorrespondence")
      .def(py::init([](const std::vector<std::pair<double, double>>& source,
                       const std::vector<std::pair<double, double>>& target) {
             return BoundaryCorrespondence(to_planar_list(source), to_planar_list(target));
           }),
           py::arg("source"), py::arg("target"))
      .def("__len__", &BoundaryCorrespondence::size);

  py::class_<HarmonicMap>(m, "HarmonicMap")
      .def_readonly("lam", &HarmonicMap::lambda)
      .def_readonly("x_solution", &HarmonicMap::x_solution)
      .def_readonly("y_solution", &HarmonicMap::y_solution)
      .def_property_readonly("embed_scale", [](const HarmonicMap& h) { return h.embed.scale; });

  py::class_<JacobianValue>(m, "JacobianValue")
      .def_readonly("dx_dxi", &JacobianValue::dx_dxi)
      .def_readonly("dy_dxi", &JacobianValue::dy_dxi)
      .def_readonly("dx_deta", &JacobianValue::dx_deta)
      .def_readonly("dy_deta", &JacobianValue::dy_deta)
      .def_readonly("det", &JacobianValue::det);

  m.def(
      "fit_map", [](const BoundaryCorrespondence& c, double lam) { return fit_map(c, lam); }, py::arg("corr"),
      py::arg("lam") = kDefaultFitLambda);
  m.def(
      "apply", [](const HarmonicMap& h, std::pair<double, double> p) { return from_planar(apply(h, to_planar(p))); },
      py::arg("map"), py::arg("p"));
  m.def(
      "jacobian", [](const HarmonicMap& h, std::pair<double, double> p) { return jacobian(h, to_planar(p)); },
      py::arg("map"), py::arg("p"));
  m.def(
      "invert_point",
      [](const HarmonicMap& h, std::pair<double, double> target, std::pair<double, double> guess) {
        return from_planar(invert_point(h, to_planar(target), to_planar(guess)));
      },
      py::arg("map"), py::arg("target"), py::arg("guess"));

  // Images are (rows, cols) uint8 arrays covering the unit square.
  m.def(
      "warp_image",
      [](const HarmonicMap& h, const ImageArray& img, int levels) {
        const GreyImage src = to_image(img, levels);
        WarpResult r = [&] {
          py::gil_scoped_release release;
          return warp_image(h, src, Viewport{}, unit_geometry(src));
        }();
        return py::make_tuple(from_image(r.image), stats_dict(r.stats));
      },
      py::arg("map"), py::arg("image"), py::arg("levels") = 256);
  m.def(
      "recover_image",
      [](const HarmonicMap& h, const ImageArray& img, int levels) {
        const GreyImage src = to_image(img, levels);
        WarpResult r = [&] {
          py::gil_scoped_release release;
          return recover_image(h, src, Viewport{}, unit_geometry(src));
        }();
        return py::make_tuple(from_image(r.image), stats_dict(r.stats));
      },
      py::arg("map"), py::arg("distorted"), py::arg("levels") = 256);
  m.def("quadratic_press", &quadratic_press, py::arg("alpha"));
  m.def(
      "make_grid_image", [](int n, int size) { return from_image(make_grid_image(n, size)); }, py::arg("n"),
      py::arg("size"));
  m.def(
      "make_portrait_image", [](int size) { return from_image(make_portrait_image(size)); }, py::arg("size"));
  m.def(
      "read_pgm",
      [](const py::bytes& data) {
        const std::string s = data;
        const GreyImage img = read_pgm(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
        return py::make_tuple(from_image(img), img.levels());
      },
      py::arg("data"), "Returns (pixels, levels).");
  m.def(
      "write_pgm",
      [](const ImageArray& img, int levels) {
        const auto bytes = write_pgm(to_image(img, levels));
        return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
      },
      py::arg("image"), py::arg("levels") = 256);
  m.def(
      "metrics",
      [](const ImageArray& a, const ImageArray& b, std::optional<double> interior) {
        const GreyImage ia = to_image(a, 256);
        const GreyImage ib = to_image(b, 256);
        std::optional<PixelRect> mask;
        if (interior) mask = central_region(ia.width(), ia.height(), *interior);
        const auto r = metrics(ia, ib, mask);
        py::dict d;
        d["mae"] = r.mae;
        d["psnr"] = r.psnr;
        d["exact_match_fraction"] = r.exact_match_fraction;
        d["total_greyness_a"] = r.total_greyness_a;
        d["total_greyness_b"] = r.total_greyness_b;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("interior") = py::none());

  m.attr("DEFAULT_FIT_LAMBDA") = kDefaultFitLambda;
  m.attr("__version__") = "0.1.0";
}
