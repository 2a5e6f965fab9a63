#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "treeharm/heat.hpp"
#include "treeharm/quadrature.hpp"
#include "treeharm/riesz.hpp"
#include "treeharm/spectral.hpp"
#include "treeharm/transforms.hpp"
#include "treeharm/tree.hpp"

namespace py = pybind11;
using namespace treeharm;

namespace {

Vertex make_vertex(int q, const std::vector<int>& word) {
  std::vector<std::uint8_t> w(word.begin(), word.end());
  return Vertex(q, std::move(w));
}

QuadratureGrid make_grid(int q, int nodes) {
  return QuadratureGrid(SpectralParams(q), nodes);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "spherical analysis on the homogeneous tree";

  py::register_exception<parameter_error>(m, "ParameterError",
                                          PyExc_ValueError);
  py::register_exception<truncation_error>(m, "TruncationError",
                                           PyExc_RuntimeError);
  py::register_exception<resolution_error>(m, "ResolutionError",
                                           PyExc_RuntimeError);
  py::register_exception<tolerance_error>(m, "ToleranceError",
                                          PyExc_RuntimeError);
  py::register_exception<pole_error>(m, "PoleError", PyExc_RuntimeError);

  m.def("sphere_size",
        [](int q, int n) { return sphere_size(TreeParams(q, 1), n); },
        py::arg("q"), py::arg("n"),
        "number of vertices at distance n from a fixed vertex");
  m.def("ball_size",
        [](int q, int radius) {
          return ball_size(TreeParams(q, std::max(radius, 1)), radius);
        },
        py::arg("q"), py::arg("radius"));
  m.def("distance",
        [](int q, const std::vector<int>& a, const std::vector<int>& b) {
          return distance(make_vertex(q, a), make_vertex(q, b));
        },
        py::arg("q"), py::arg("a"), py::arg("b"),
        "tree distance between two label words");

  m.def("gamma_eigenvalue",
        [](int q, double lam) {
          return gamma_eigenvalue(SpectralParams(q), lam);
        },
        py::arg("q"), py::arg("lam"));
  m.def("spectral_period",
        [](int q) { return SpectralParams(q).tau; }, py::arg("q"));
  m.def("c_function",
        [](int q, cxd z) { return c_function(SpectralParams(q), z); },
        py::arg("q"), py::arg("z"));
  m.def("plancherel_weight",
        [](int q, double lam) {
          return plancherel_weight(SpectralParams(q), lam);
        },
        py::arg("q"), py::arg("lam"));
  m.def("spherical_function",
        [](int q, double lam, int shells) {
          return spherical_function(SpectralParams(q), lam, shells);
        },
        py::arg("q"), py::arg("lam"), py::arg("shells"));
  m.def("spherical_function",
        [](int q, cxd lam, int shells) {
          return spherical_function(SpectralParams(q), lam, shells);
        },
        py::arg("q"), py::arg("lam"), py::arg("shells"));

  m.def("spherical_transform",
        [](int q, const std::vector<cxd>& values, int nodes) {
          RadialFunction f(q, values);
          return spherical_transform(f, make_grid(q, nodes)).samples();
        },
        py::arg("q"), py::arg("values"), py::arg("nodes") = 512);
  m.def("inverse_spherical",
        [](int q, const std::vector<cxd>& samples, int shells) {
          QuadratureGrid grid = make_grid(q, static_cast<int>(samples.size()));
          RadialWithBudget r =
              inverse_spherical(SpectralFunction(grid, samples), shells);
          return py::make_tuple(r.values.values(), r.budget);
        },
        py::arg("q"), py::arg("samples"), py::arg("shells"));
  m.def("fourier_inverse",
        [](int q, const std::vector<cxd>& samples, int max_index) {
          QuadratureGrid grid = make_grid(q, static_cast<int>(samples.size()));
          SequenceWithBudget r =
              fourier_inverse(SpectralFunction(grid, samples), max_index);
          return py::make_tuple(r.values, r.budget);
        },
        py::arg("q"), py::arg("samples"), py::arg("max_index"));
  m.def("abel_inverse",
        [](int q, const std::vector<cxd>& g, int shells, int series_cutoff) {
          RadialWithBudget r = abel_inverse(q, g, shells, series_cutoff);
          return py::make_tuple(r.values.values(), r.budget);
        },
        py::arg("q"), py::arg("g"), py::arg("shells"),
        py::arg("series_cutoff") = 60);

  m.def("riesz_multiplier",
        [](int q, cxd z, double R, double lam) {
          return riesz_multiplier(SpectralParams(q), RieszParams(z, R), lam);
        },
        py::arg("q"), py::arg("z"), py::arg("R"), py::arg("lam"));
  m.def("riesz_kernel",
        [](int q, cxd z, double R, int shells, int nodes) {
          RadialWithBudget r = riesz_kernel_spectral(
              RieszParams(z, R), make_grid(q, nodes), shells);
          return py::make_tuple(r.values.values(), r.budget);
        },
        py::arg("q"), py::arg("z"), py::arg("R"), py::arg("shells") = 30,
        py::arg("nodes") = 512);
  m.def("kernel_report",
        [](int q, cxd z, double R, int shells, int series_cutoff, int nodes) {
          KernelReport rep = kernel_report(RieszParams(z, R),
                                           make_grid(q, nodes), shells,
                                           series_cutoff);
          py::dict d;
          d["kernel"] = rep.spectral_route.values();
          d["decay_ratio"] = rep.decay_ratio;
          d["route_discrepancy"] = rep.route_discrepancy;
          d["budget"] = rep.budget;
          return d;
        },
        py::arg("q"), py::arg("z"), py::arg("R"), py::arg("shells") = 30,
        py::arg("series_cutoff") = 60, py::arg("nodes") = 512);
  m.def("decay_bound", &decay_bound, py::arg("q"));
  m.def("comparison_lq_norm",
        [](int q, double p, int shells) {
          LqNorm n = radial_lq_norm(comparison_kernel(q, shells), p);
          return py::make_tuple(n.value, n.diverges);
        },
        py::arg("q"), py::arg("p"), py::arg("shells") = 40);

  m.def("heat_kernel",
        [](int q, double time, int shells, int nodes) {
          HeatKernel h =
              heat_kernel(HeatParams(time), make_grid(q, nodes), shells);
          return py::make_tuple(h.values.values(), h.quad_budget,
                                h.tail_mass);
        },
        py::arg("q"), py::arg("time"), py::arg("shells") = 30,
        py::arg("nodes") = 512);
}
