// pybind11 surface: numpy 2-D arrays in, numpy arrays out. Arrays are
// (height, width) row-major, so a[y, x] matches ScalarField2D::at(x, y).
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>
#include <utility>

#include "lfseg/bench.hpp"
#include "lfseg/image_io.hpp"
#include "lfseg/models.hpp"
#include "lfseg/multiphase.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace lfseg;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using MaskArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

ScalarField2D to_field(const DoubleArray& arr) {
  if (arr.ndim() != 2) throw ParameterError("expected a 2-D array");
  ScalarField2D f(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)));
  std::memcpy(f.data(), arr.data(), sizeof(double) * f.size());
  return f;
}

py::array_t<double> to_array(const ScalarField2D& f) {
  py::array_t<double> arr({f.height(), f.width()});
  std::memcpy(arr.mutable_data(), f.data(), sizeof(double) * f.size());
  return arr;
}

BinaryMask to_mask(const MaskArray& arr) {
  if (arr.ndim() != 2) throw ParameterError("expected a 2-D array");
  BinaryMask m(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)));
  const std::uint8_t* src = arr.data();
  for (std::size_t i = 0; i < m.values.size(); ++i) m.values[i] = src[i] ? 1 : 0;
  return m;
}

py::array_t<std::uint8_t> mask_to_array(const BinaryMask& m) {
  py::array_t<std::uint8_t> arr({m.height, m.width});
  std::memcpy(arr.mutable_data(), m.values.data(), m.values.size());
  return arr;
}

FittingPair to_pair(const DoubleArray& side1, const DoubleArray& side2) {
  FittingPair p;
  p.side1 = to_field(side1);
  p.side2 = to_field(side2);
  if (!p.side1.same_shape(p.side2)) throw ParameterError("side arrays differ in shape");
  return p;
}

py::tuple pair_to_tuple(const FittingPair& p) {
  return py::make_tuple(to_array(p.side1), to_array(p.side2));
}

LevelSet to_levelset(const DoubleArray& phi, double epsilon) {
  return LevelSet{to_field(phi), epsilon};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Level-set active-contour segmentation (RSF/LIF/LGDF/MRSF) with the "
      "direction-consistent min/max fitting-value swap";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_RuntimeError);

  py::enum_<ModelKind>(m, "ModelKind")
      .value("rsf", ModelKind::rsf)
      .value("lif", ModelKind::lif)
      .value("lgdf", ModelKind::lgdf)
      .value("mrsf", ModelKind::mrsf);

  py::enum_<Polarity>(m, "Polarity")
      .value("bright_object", Polarity::bright_object)
      .value("dark_object", Polarity::dark_object)
      .value("off", Polarity::off);

  py::enum_<VarianceSwapRule>(m, "VarianceSwapRule")
      .value("independent", VarianceSwapRule::independent)
      .value("follow_means", VarianceSwapRule::follow_means);

  py::enum_<Scene>(m, "Scene")
      .value("two_blob_inhomogeneous", Scene::two_blob_inhomogeneous)
      .value("vessel_like", Scene::vessel_like)
      .value("four_region", Scene::four_region);

  // ---- analytic primitives and kernels ----

  m.def("heaviside_eps", &heaviside_eps, "x"_a, "epsilon"_a,
        "Regularized Heaviside 0.5*(1 + (2/pi)*atan(x/epsilon)).");
  m.def("dirac_eps", &dirac_eps, "x"_a, "epsilon"_a,
        "Regularized Dirac epsilon/(pi*(epsilon^2 + x^2)).");
  m.def(
      "heaviside_field",
      [](const DoubleArray& phi, double epsilon) {
        return to_array(heaviside_field(to_levelset(phi, epsilon)));
      },
      "phi"_a, "epsilon"_a = 1.0);
  m.def(
      "dirac_field",
      [](const DoubleArray& phi, double epsilon) {
        return to_array(dirac_field(to_levelset(phi, epsilon)));
      },
      "phi"_a, "epsilon"_a = 1.0);

  py::class_<GaussianKernel>(m, "GaussianKernel")
      .def_readonly("sigma", &GaussianKernel::sigma)
      .def_readonly("radius", &GaussianKernel::radius)
      .def_readonly("weights1d", &GaussianKernel::weights1d)
      .def("__repr__", [](const GaussianKernel& k) {
        return "GaussianKernel(sigma=" + std::to_string(k.sigma) +
               ", radius=" + std::to_string(k.radius) + ")";
      });

  m.def("make_gaussian_kernel", py::overload_cast<double>(&make_gaussian_kernel), "sigma"_a);
  m.def("make_gaussian_kernel", py::overload_cast<double, int>(&make_gaussian_kernel), "sigma"_a,
        "radius"_a);
  m.def(
      "convolve",
      [](const DoubleArray& image, const GaussianKernel& kernel) {
        return to_array(convolve(to_field(image), kernel));
      },
      "image"_a, "kernel"_a, "Separable Gaussian convolution with replicate boundaries.");

  // ---- level set geometry ----

  py::class_<RectShape>(m, "RectShape")
      .def(py::init([](int x0, int y0, int x1, int y1) {
             return RectShape{x0, y0, x1, y1};
           }),
           "x0"_a, "y0"_a, "x1"_a, "y1"_a)
      .def_readwrite("x0", &RectShape::x0)
      .def_readwrite("y0", &RectShape::y0)
      .def_readwrite("x1", &RectShape::x1)
      .def_readwrite("y1", &RectShape::y1)
      .def("__repr__", [](const RectShape& r) {
        return "RectShape(" + std::to_string(r.x0) + ", " + std::to_string(r.y0) + ", " +
               std::to_string(r.x1) + ", " + std::to_string(r.y1) + ")";
      });

  py::class_<CircleShape>(m, "CircleShape")
      .def(py::init([](int cx, int cy, double r) {
             return CircleShape{cx, cy, r};
           }),
           "cx"_a, "cy"_a, "r"_a)
      .def_readwrite("cx", &CircleShape::cx)
      .def_readwrite("cy", &CircleShape::cy)
      .def_readwrite("r", &CircleShape::r)
      .def("__repr__", [](const CircleShape& c) {
        return "CircleShape(" + std::to_string(c.cx) + ", " + std::to_string(c.cy) + ", " +
               std::to_string(c.r) + ")";
      });

  py::class_<InitSpec>(m, "InitSpec")
      .def(py::init([](std::vector<Shape> shapes, double c0) {
             InitSpec spec;
             spec.shapes = std::move(shapes);
             spec.c0 = c0;
             return spec;
           }),
           "shapes"_a, "c0"_a = 2.0)
      .def_readwrite("shapes", &InitSpec::shapes)
      .def_readwrite("c0", &InitSpec::c0);

  m.def(
      "init_binary_step",
      [](int width, int height, const InitSpec& spec, double epsilon) {
        return to_array(init_binary_step(width, height, spec, epsilon).phi);
      },
      "width"_a, "height"_a, "init"_a, "epsilon"_a = 1.0,
      "phi = -c0 inside the seed shapes, +c0 elsewhere.");
  m.def(
      "extract_mask",
      [](const DoubleArray& phi) { return mask_to_array(extract_mask(to_levelset(phi, 1.0))); },
      "phi"_a, "mask = 1 where phi < 0.");

  // ---- fitting and the swap ----

  m.def(
      "fit_means",
      [](const DoubleArray& image, const DoubleArray& h, const GaussianKernel& kernel) {
        return pair_to_tuple(fit_means(to_field(image), to_field(h), kernel));
      },
      "image"_a, "h"_a, "kernel"_a,
      "Local side means (side1, side2) given the Heaviside field h.");
  m.def(
      "fit_variances",
      [](const DoubleArray& image, const DoubleArray& h, const py::tuple& means,
         const GaussianKernel& kernel) {
        FittingPair mu = to_pair(means[0].cast<DoubleArray>(), means[1].cast<DoubleArray>());
        return pair_to_tuple(fit_variances(to_field(image), to_field(h), mu, kernel));
      },
      "image"_a, "h"_a, "means"_a, "kernel"_a);
  m.def(
      "swap_pair",
      [](const DoubleArray& side1, const DoubleArray& side2, Polarity polarity) {
        return pair_to_tuple(swap_pair(to_pair(side1, side2), polarity));
      },
      "side1"_a, "side2"_a, "polarity"_a,
      "Pointwise min/max exchange per polarity; returns (side1, side2).");
  m.def(
      "swap_lgdf",
      [](const py::tuple& means, const py::tuple& variances, Polarity polarity,
         VarianceSwapRule rule) {
        auto [u, v] = swap_lgdf(to_pair(means[0].cast<DoubleArray>(), means[1].cast<DoubleArray>()),
                                to_pair(variances[0].cast<DoubleArray>(),
                                        variances[1].cast<DoubleArray>()),
                                polarity, rule);
        return py::make_tuple(pair_to_tuple(u), pair_to_tuple(v));
      },
      "means"_a, "variances"_a, "polarity"_a, "rule"_a = VarianceSwapRule::independent);

  // ---- model parameters and solver loops ----

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("lambda1", &ModelParams::lambda1)
      .def_readwrite("lambda2", &ModelParams::lambda2)
      .def_readwrite("nu", &ModelParams::nu)
      .def_readwrite("mu", &ModelParams::mu)
      .def_readwrite("epsilon", &ModelParams::epsilon)
      .def_readwrite("sigma", &ModelParams::sigma)
      .def_readwrite("dt", &ModelParams::dt)
      .def_readwrite("c0", &ModelParams::c0)
      .def_readwrite("max_iters", &ModelParams::max_iters)
      .def_readwrite("polarity", &ModelParams::polarity)
      .def_readwrite("variance_swap", &ModelParams::variance_swap)
      .def_readwrite("early_stop", &ModelParams::early_stop)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(nu=" + std::to_string(p.nu) + ", mu=" + std::to_string(p.mu) +
               ", sigma=" + std::to_string(p.sigma) + ", dt=" + std::to_string(p.dt) +
               ", max_iters=" + std::to_string(p.max_iters) + ")";
      });

  m.def("default_params", &default_params, "kind"_a, "Published per-model defaults.");
  m.def("validate_params", &validate_params, "params"_a);

  py::class_<RunResult>(m, "RunResult")
      .def_property_readonly("phi", [](const RunResult& r) { return to_array(r.final_phi.phi); })
      .def_property_readonly("mask", [](const RunResult& r) { return mask_to_array(r.mask); })
      .def_readonly("energy_trace", &RunResult::energy_trace)
      .def_readonly("iterations_run", &RunResult::iterations_run)
      .def_readonly("elapsed_seconds", &RunResult::elapsed_seconds);

  m.def(
      "run",
      [](ModelKind model, const DoubleArray& image, const InitSpec& init, const ModelParams& p) {
        ScalarField2D img = to_field(image);
        py::gil_scoped_release release;
        return run(model, img, init, p);
      },
      "model"_a, "image"_a, "init"_a, "params"_a,
      "Two-phase solver loop (rsf, lif or lgdf); returns a RunResult.");

  // ---- multiphase ----

  py::class_<ThresholdInit>(m, "ThresholdInit")
      .def(py::init([](double t_a, double t_b) {
             return ThresholdInit{t_a, t_b};
           }),
           "t_a"_a, "t_b"_a)
      .def_readwrite("t_a", &ThresholdInit::t_a)
      .def_readwrite("t_b", &ThresholdInit::t_b);

  py::class_<MrsfResult>(m, "MrsfResult")
      .def_property_readonly("phi_a",
                             [](const MrsfResult& r) { return to_array(r.final_phases.phi_a.phi); })
      .def_property_readonly("phi_b",
                             [](const MrsfResult& r) { return to_array(r.final_phases.phi_b.phi); })
      .def_property_readonly("masks",
                             [](const MrsfResult& r) {
                               py::list out;
                               for (const BinaryMask& mask : r.masks) out.append(mask_to_array(mask));
                               return out;
                             })
      .def_readonly("energy_trace", &MrsfResult::energy_trace)
      .def_readonly("iterations_run", &MrsfResult::iterations_run)
      .def_readonly("elapsed_seconds", &MrsfResult::elapsed_seconds);

  m.def(
      "run_mrsf",
      [](const DoubleArray& image, const MrsfInit& init, const ModelParams& p) {
        ScalarField2D img = to_field(image);
        py::gil_scoped_release release;
        return run_mrsf(img, init, p);
      },
      "image"_a, "init"_a, "params"_a,
      "Four-phase solver loop; init is an (InitSpec, InitSpec) pair or a ThresholdInit.");

  // ---- synthetic scenes and evaluation ----

  py::class_<SyntheticSpec>(m, "SyntheticSpec")
      .def(py::init<>())
      .def_readwrite("scene", &SyntheticSpec::scene)
      .def_readwrite("width", &SyntheticSpec::width)
      .def_readwrite("height", &SyntheticSpec::height)
      .def_readwrite("levels", &SyntheticSpec::levels)
      .def_readwrite("bias", &SyntheticSpec::bias)
      .def_readwrite("noise_sigma", &SyntheticSpec::noise_sigma)
      .def_readwrite("seed", &SyntheticSpec::seed);

  py::class_<SyntheticImage>(m, "SyntheticImage")
      .def_property_readonly("image",
                             [](const SyntheticImage& s) { return to_array(s.image); })
      .def_property_readonly("truths", [](const SyntheticImage& s) {
        py::list out;
        for (const BinaryMask& mask : s.truths) out.append(mask_to_array(mask));
        return out;
      });

  m.def("generate", &generate, "spec"_a, "Deterministic synthetic instance with ground truth.");
  m.def("standard_two_blob", &standard_two_blob);
  m.def("standard_vessel", &standard_vessel);
  m.def("standard_four_region", &standard_four_region);
  m.def("standard_two_blob_inits", [] {
    py::list out;
    for (const NamedInit& ni : standard_two_blob_inits())
      out.append(py::make_tuple(ni.name, ni.init));
    return out;
  });
  m.def("standard_four_region_inits", [] {
    py::list out;
    for (const NamedMrsfInit& ni : standard_four_region_inits())
      out.append(py::make_tuple(ni.name, ni.init));
    return out;
  });

  m.def(
      "dsc", [](const MaskArray& a, const MaskArray& b) { return dsc(to_mask(a), to_mask(b)); },
      "a"_a, "b"_a, "Dice coefficient 2|A&B|/(|A|+|B|); 1 when both empty.");

  // ---- image io ----

  m.def(
      "load_image",
      [](const std::filesystem::path& path) { return to_array(load_image(path)); }, "path"_a,
      "8-bit grayscale PGM or PNG as a float array in [0, 255].");
  m.def(
      "save_image",
      [](const DoubleArray& image, const std::filesystem::path& path) {
        save_image(to_field(image), path);
      },
      "image"_a, "path"_a);
  m.def(
      "save_mask",
      [](const MaskArray& mask, const std::filesystem::path& path) {
        save_mask(to_mask(mask), path);
      },
      "mask"_a, "path"_a);
}
