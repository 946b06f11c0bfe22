#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <filesystem>
#include <optional>

#include "csrbf/errors.hpp"
#include "csrbf/four_landmark.hpp"
#include "csrbf/io.hpp"
#include "csrbf/raster.hpp"
#include "csrbf/registration.hpp"
#include "csrbf/support_analysis.hpp"
#include "csrbf/warp_render.hpp"

namespace py = pybind11;
using namespace csrbf;

namespace {

using PointArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ByteArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

std::vector<Point2> to_points(const PointArray& a, const char* what) {
  if (a.ndim() != 2 || a.shape(1) != 2) throw InputError(std::string(what) + " must have shape (n, 2)");
  std::vector<Point2> pts(static_cast<std::size_t>(a.shape(0)));
  auto v = a.unchecked<2>();
  for (py::ssize_t i = 0; i < a.shape(0); ++i) pts[static_cast<std::size_t>(i)] = {v(i, 0), v(i, 1)};
  return pts;
}

py::array_t<double> from_points(const std::vector<Point2>& pts) {
  py::array_t<double> out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{2}});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    w(i, 0) = pts[i].x;
    w(i, 1) = pts[i].y;
  }
  return out;
}

LandmarkCorrespondence to_landmarks(const PointArray& source, const PointArray& target) {
  return LandmarkCorrespondence(to_points(source, "source"), to_points(target, "target"));
}

RasterImage to_image(const ByteArray& a) {
  if (a.ndim() != 2 && !(a.ndim() == 3 && a.shape(2) == 3)) {
    throw InputError("image must have shape (h, w) or (h, w, 3)");
  }
  const auto h = static_cast<std::size_t>(a.shape(0));
  const auto w = static_cast<std::size_t>(a.shape(1));
  const std::size_t ch = a.ndim() == 3 ? 3 : 1;
  return RasterImage(w, h, ch, std::vector<std::uint8_t>(a.data(), a.data() + a.size()));
}

py::array_t<std::uint8_t> from_image(const RasterImage& img) {
  std::vector<py::ssize_t> shape = {static_cast<py::ssize_t>(img.height()), static_cast<py::ssize_t>(img.width())};
  if (img.channels() == 3) shape.push_back(3);
  py::array_t<std::uint8_t> out(shape);
  std::copy(img.pixels().begin(), img.pixels().end(), out.mutable_data());
  return out;
}

// Applies f elementwise; scalars in, scalar out.
template <typename F>
py::object map_radii(const py::object& r, F f) {
  if (py::isinstance<py::float_>(r) || py::isinstance<py::int_>(r)) return py::float_(f(r.cast<double>()));
  return py::vectorize(f)(r.cast<py::array_t<double>>());
}

Rect to_rect(const std::array<double, 4>& r) { return {r[0], r[1], r[2], r[3]}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Landmark registration with compactly supported radial basis functions";

  auto base = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ConditioningError>(m, "ConditioningError", PyExc_ArithmeticError);
  py::register_exception<SingularConfigurationError>(m, "SingularConfigurationError", PyExc_ArithmeticError);

  py::class_<KernelFamily>(m, "KernelFamily")
      .def_static("wendland", &KernelFamily::wendland31)
      .def_static("wu", &KernelFamily::wu12)
      .def_static("gneiting", &KernelFamily::gneiting, py::arg("l"))
      .def_static("gneiting_seven_halves", &KernelFamily::gneiting_seven_halves)
      .def_static("gneiting_five", &KernelFamily::gneiting_five)
      .def_static(
          "parse", [](const std::string& name, std::optional<double> l) { return parse_family(name, l.value_or(0.0)); },
          py::arg("name"), py::arg("l") = py::none())
      .def_property_readonly("name", &KernelFamily::name)
      .def_property_readonly("exponent", &KernelFamily::exponent)
      .def("__eq__", [](const KernelFamily& a, const KernelFamily& b) { return a == b; })
      .def("__hash__", [](const KernelFamily& f) { return py::hash(py::str(f.name())); })
      .def("__repr__", [](const KernelFamily& f) { return "KernelFamily('" + f.name() + "')"; });

  m.def("named_families", [] {
    std::vector<KernelFamily> out;
    for (int i = 0; i < kNamedFamilyCount; ++i) out.push_back(named_family(i));
    return out;
  });

  py::class_<Kernel>(m, "Kernel")
      .def(py::init<KernelFamily, double>(), py::arg("family"), py::arg("c"))
      .def_property_readonly("family", &Kernel::family)
      .def_property_readonly("c", &Kernel::support)
      .def(
          "value",
          [](const Kernel& k, const py::object& r) {
            return map_radii(r, [&k](double x) { return kernel_value(k, x); });
          },
          py::arg("r"))
      .def(
          "deriv",
          [](const Kernel& k, const py::object& r) {
            return map_radii(r, [&k](double x) { return kernel_deriv(k, x); });
          },
          py::arg("r"))
      .def(
          "deriv2",
          [](const Kernel& k, const py::object& r) {
            return map_radii(r, [&k](double x) { return kernel_deriv2(k, x); });
          },
          py::arg("r"))
      .def("__repr__", [](const Kernel& k) {
        return "Kernel('" + k.family().name() + "', c=" + format_number(k.support()) + ")";
      });

  py::class_<SupportBound>(m, "SupportBound")
      .def_readonly("family", &SupportBound::family)
      .def_readonly("r_star_over_c", &SupportBound::r_star_over_c)
      .def_readonly("slope_min", &SupportBound::slope_min)
      .def_readonly("c_min_over_delta", &SupportBound::c_min_over_delta);
  m.def("support_bound", &support_bound, py::arg("family"));
  m.def("min_support", &min_support, py::arg("family"), py::arg("delta"));

  py::class_<Transformation>(m, "Transformation")
      .def_property_readonly("kernel", &Transformation::kernel)
      .def_property_readonly("centers", [](const Transformation& t) { return from_points(t.centers()); })
      .def_property_readonly("coefficients", [](const Transformation& t) { return from_points(t.coefficients()); })
      .def(
          "evaluate",
          [](const Transformation& t, const PointArray& x) {
            auto pts = to_points(x, "points");
            for (auto& p : pts) p = t.evaluate(p);
            return from_points(pts);
          },
          py::arg("points"))
      .def(
          "jacobian",
          [](const Transformation& t, const PointArray& x) {
            const auto pts = to_points(x, "points");
            py::array_t<double> out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{2}, py::ssize_t{2}});
            auto w = out.mutable_unchecked<3>();
            for (std::size_t i = 0; i < pts.size(); ++i) {
              const Matrix2 j = t.jacobian(pts[i]);
              w(i, 0, 0) = j.xx;
              w(i, 0, 1) = j.xy;
              w(i, 1, 0) = j.yx;
              w(i, 1, 1) = j.yy;
            }
            return out;
          },
          py::arg("points"));

  m.def(
      "fit",
      [](const Kernel& k, const PointArray& source, const PointArray& target) {
        return fit(k, to_landmarks(source, target));
      },
      py::arg("kernel"), py::arg("source"), py::arg("target"));

  py::class_<JacobianField>(m, "JacobianField")
      .def_property_readonly("region",
                             [](const JacobianField& f) {
                               return py::make_tuple(f.region.x0, f.region.y0, f.region.x1, f.region.y1);
                             })
      .def_property_readonly("values",
                             [](const JacobianField& f) {
                               py::array_t<double> out(
                                   {static_cast<py::ssize_t>(f.ny), static_cast<py::ssize_t>(f.nx)});
                               std::copy(f.values.begin(), f.values.end(), out.mutable_data());
                               return out;
                             })
      .def_readonly("min_det", &JacobianField::min_det)
      .def_property_readonly("argmin", [](const JacobianField& f) { return py::make_tuple(f.argmin.x, f.argmin.y); })
      .def_readonly("negative_fraction", &JacobianField::negative_fraction);
  m.def(
      "det_field",
      [](const Transformation& t, const std::array<double, 4>& region, std::size_t nx, std::size_t ny) {
        py::gil_scoped_release release;
        return det_field(t, to_rect(region), nx, ny);
      },
      py::arg("transformation"), py::arg("region"), py::arg("nx"), py::arg("ny"));

  m.def(
      "rhombus_coefficients",
      [](const Kernel& k, double delta) {
        const RhombusCoefficients co = rhombus_coefficients(RhombusCase(k, delta));
        return py::make_tuple(co.c1, co.c2);
      },
      py::arg("kernel"), py::arg("delta"));
  m.def(
      "axis_det", [](const Kernel& k, double delta, double y) { return axis_det(RhombusCase(k, delta), y); },
      py::arg("kernel"), py::arg("delta"), py::arg("y"));
  m.def("asymptotic_axis_det", &asymptotic_axis_det, py::arg("delta"), py::arg("y"));
  m.def("axis_samples", &axis_samples, py::arg("n"), py::arg("y_max"));
  m.def(
      "figure2_table",
      [](const std::vector<KernelFamily>& families, double c, double delta, const std::vector<double>& ys) {
        py::list out;
        for (const auto& r : figure2_table(families, c, delta, ys)) out.append(py::make_tuple(r.y, r.family.name(), r.det));
        return out;
      },
      py::arg("families"), py::arg("c"), py::arg("delta"), py::arg("ys"));

  m.def(
      "warp_image",
      [](const Kernel& k, const PointArray& source, const PointArray& target, const ByteArray& image,
         std::uint8_t fill) {
        const LandmarkCorrespondence lm = to_landmarks(source, target);
        const RasterImage img = to_image(image);
        RasterImage out;
        {
          py::gil_scoped_release release;
          out = warp_image(k, lm, img, fill);
        }
        return from_image(out);
      },
      py::arg("kernel"), py::arg("source"), py::arg("target"), py::arg("image"), py::arg("fill") = 0);

  m.def(
      "deform_grid_svg",
      [](const Transformation& t, const PointArray& source, const PointArray& target,
         const std::array<double, 4>& region, std::size_t lines, std::size_t samples) {
        return deform_grid(t, GridSpec{to_rect(region), lines, samples}, to_landmarks(source, target)).to_svg();
      },
      py::arg("transformation"), py::arg("source"), py::arg("target"), py::arg("region") = std::array{0.0, 0.0, 1.0, 1.0},
      py::arg("lines") = 11, py::arg("samples") = 101);

  m.def(
      "read_pnm", [](const std::string& path) { return from_image(read_pnm(std::filesystem::path(path))); },
      py::arg("path"));
  m.def(
      "write_pnm",
      [](const std::string& path, const ByteArray& image) { write_pnm(std::filesystem::path(path), to_image(image)); },
      py::arg("path"), py::arg("image"));
  m.def(
      "load_landmarks",
      [](const std::string& path) {
        const LandmarkCorrespondence lm = load_landmarks(path);
        return py::make_tuple(from_points(lm.source()), from_points(lm.target()));
      },
      py::arg("path"));

  m.def(
      "synthetic_brain_image",
      [](std::size_t w, std::size_t h) { return from_image(synthetic_brain_image(w, h)); }, py::arg("width") = 128,
      py::arg("height") = 128);
  m.def("synthetic_brain_landmarks", [] {
    const LandmarkCorrespondence lm = synthetic_brain_landmarks();
    return py::make_tuple(from_points(lm.source()), from_points(lm.target()));
  });
}
