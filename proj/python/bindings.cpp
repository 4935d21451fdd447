#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "knot/spectral.hpp"
#include "knot/unroll.hpp"

namespace py = pybind11;
using namespace knot;

namespace {

HankelKind kind_of(int k) {
    if (k == 1) return HankelKind::one;
    if (k == 2) return HankelKind::two;
    throw std::invalid_argument("kind must be 1 or 2");
}

Numerics numerics(double rtol, double atol, long max_steps) {
    Numerics n;
    n.rel_tol = rtol;
    n.abs_tol = atol;
    n.max_steps = max_steps;
    return n;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hankel monodromy, contour shooting and knot quantization";

    py::class_<SurfacePoint>(m, "SurfacePoint")
        .def(py::init<double, double>(), py::arg("rho"), py::arg("theta"))
        .def_property_readonly("rho", &SurfacePoint::rho)
        .def_property_readonly("theta", &SurfacePoint::theta)
        .def("to_complex", &SurfacePoint::to_complex)
        .def_property_readonly("sector", [](const SurfacePoint& p) { return try_sector_of(p); })
        .def("__repr__", [](const SurfacePoint& p) {
            return "SurfacePoint(rho=" + std::to_string(p.rho()) + ", theta=" + std::to_string(p.theta()) + ")";
        });

    py::class_<ContourSpec>(m, "ContourSpec")
        .def(py::init([](int N, double rho0, double eps, double r_max, int n_samples) {
                 ContourSpec s{N, rho0, eps, r_max, n_samples};
                 s.validate();
                 return s;
             }),
             py::arg("N") = 1, py::arg("rho0") = 1.0, py::arg("eps") = 0.1, py::arg("r_max") = 30.0,
             py::arg("n_samples") = 400)
        .def_readonly("N", &ContourSpec::N)
        .def_readonly("rho0", &ContourSpec::rho0)
        .def_readonly("eps", &ContourSpec::eps)
        .def_readonly("r_max", &ContourSpec::r_max)
        .def_readonly("n_samples", &ContourSpec::n_samples);

    py::class_<KnotQuantum>(m, "KnotQuantum")
        .def_readonly("N", &KnotQuantum::N)
        .def_readonly("M", &KnotQuantum::M)
        .def_readonly("nu", &KnotQuantum::nu)
        .def_readonly("ell", &KnotQuantum::ell)
        .def_readonly("allowed", &KnotQuantum::allowed);

    py::class_<ShootResult>(m, "ShootResult")
        .def_readonly("c1", &ShootResult::c1)
        .def_readonly("c2", &ShootResult::c2)
        .def_readonly("residual", &ShootResult::residual)
        .def_readonly("logscale", &ShootResult::logscale)
        .def_readonly("steps", &ShootResult::steps)
        .def_readonly("predicted_ratio", &ShootResult::predicted_ratio)
        .def_readonly("predicted_residual", &ShootResult::predicted_residual);

    m.def("hankel", [](int kind, double nu, std::complex<double> z) {
        return hankel_principal(kind_of(kind), Order(nu), z);
    }, py::arg("kind"), py::arg("nu"), py::arg("z"), "Principal-branch Hankel function H^(kind)_nu(z).");

    m.def("hankel_on_surface", [](int kind, double nu, double rho, double theta) {
        return hankel_on_surface(kind_of(kind), Order(nu), SurfacePoint(rho, theta));
    }, py::arg("kind"), py::arg("nu"), py::arg("rho"), py::arg("theta"));

    m.def("monodromy_coeffs", [](double nu, int mm) {
        const Monodromy c = monodromy_coeffs(Order(nu), mm);
        return py::make_tuple(c.a, c.b);
    }, py::arg("nu"), py::arg("m"), "(a, b) with H2(z e^{i m pi}) = a H2(z) + b H1(z).");

    m.def("continuation_oracle", [](double nu, std::complex<double> z0, double dtheta) {
        return continuation_oracle(Order(nu), z0, dtheta).value;
    }, py::arg("nu"), py::arg("z0"), py::arg("dtheta"));

    m.def("contour_points", [](const ContourSpec& spec) {
        const ContourPath path = build_contour(spec);
        std::vector<std::complex<double>> out;
        out.reserve(path.size());
        for (const SurfacePoint& p : path.points()) out.push_back(p.to_complex());
        return out;
    }, py::arg("spec"));

    m.def("growing_coefficient", &growing_coefficient, py::arg("nu"), py::arg("N"));
    m.def("is_bound_state", &is_bound_state, py::arg("nu"), py::arg("N"), py::arg("tol") = kQuantizationTolerance);
    m.def("allowed_angular_momenta", &allowed_angular_momenta, py::arg("N"), py::arg("M_max"));
    m.def("effective_order", [](int D, int mm, double gamma) {
        return effective_order({D, mm, gamma, 1.0});
    }, py::arg("D"), py::arg("m"), py::arg("gamma"));
    m.def("coupling_for_knot", [](int D, int mm, int N, int M) {
        const KnotCoupling k = coupling_for_knot(D, mm, N, M);
        return py::make_tuple(k.gamma, k.forbidden);
    }, py::arg("D"), py::arg("m"), py::arg("N"), py::arg("M"));
    m.def("dimension_dichotomy", [](int D, int mm, int N) {
        const Dichotomy d = dimension_dichotomy(D, mm, N);
        return py::make_tuple(d.allowed_free, d.M);
    }, py::arg("D"), py::arg("m"), py::arg("N"));

    m.def("shoot", [](double nu, int N, double kappa, const ContourSpec& spec, double rtol, double atol,
                      long max_steps) {
        const Numerics num = numerics(rtol, atol, max_steps);
        py::gil_scoped_release release;
        return shoot(nu, N, kappa, spec, num);
    }, py::arg("nu"), py::arg("N"), py::arg("kappa"), py::arg("spec"), py::arg("rtol") = 1e-10,
       py::arg("atol") = 1e-12, py::arg("max_steps") = 2'000'000);

    m.def("scan_sturmian", [](int N, double kappa, double nu_min, double nu_max, int grid_points,
                              const ContourSpec& spec) {
        std::vector<ResidualMinimum> found;
        {
            py::gil_scoped_release release;
            found = scan_sturmian(N, kappa, nu_min, nu_max, grid_points, spec);
        }
        std::vector<std::pair<double, double>> out;
        for (const auto& f : found) out.emplace_back(f.nu, f.residual);
        return out;
    }, py::arg("N"), py::arg("kappa"), py::arg("nu_min"), py::arg("nu_max"), py::arg("grid_points"),
       py::arg("spec"));

    m.def("map_to_strip", [](double rho, double theta) {
        const StripPoint q = map_to_strip({rho, theta});
        return py::make_tuple(q.u, q.v);
    }, py::arg("rho"), py::arg("theta"));
    m.def("map_from_strip", [](double u, double v) {
        const SurfacePoint p = map_from_strip({u, v});
        return py::make_tuple(p.rho(), p.theta());
    }, py::arg("u"), py::arg("v"));
}
