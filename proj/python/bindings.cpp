#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tate/correlator.hpp"
#include "tate/determinant.hpp"
#include "tate/io.hpp"
#include "tate/kernel.hpp"
#include "tate/matrix.hpp"
#include "tate/spectral.hpp"
#include "tate/tree.hpp"

namespace py = pybind11;
using namespace tate;

namespace {

TatePoint point(long p, int m, const std::string& x) { return TatePoint(parse_rational(x), PrimeParams(p, m)); }

py::object opt_rational(const std::optional<Rational>& r) {
    return r ? py::object(py::str(to_string(*r))) : py::object(py::none());
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Boundary operator on the p-adic Tate curve; rationals cross the boundary as 'a/b' strings.";

    py::register_exception<SingularityError>(mod, "SingularityError", PyExc_ValueError);

    mod.def("reduce_to_E", [](long p, int m, const std::string& x) { return to_string(point(p, m, x).rep()); },
            py::arg("p"), py::arg("m"), py::arg("x"));
    mod.def("kernel_H", [](long p, int m, const std::string& z, const std::string& x) {
        return to_string(kernel_H(point(p, m, z), point(p, m, x)));
    }, py::arg("p"), py::arg("m"), py::arg("z"), py::arg("x"));
    mod.def("local_height", [](long p, int m, const std::string& x) { return to_string(local_height(point(p, m, x))); },
            py::arg("p"), py::arg("m"), py::arg("x"));
    mod.def("greens_function", [](long p, int m, const std::string& x, const std::string& y) {
        return to_string(greens_function(point(p, m, x), point(p, m, y)));
    }, py::arg("p"), py::arg("m"), py::arg("x"), py::arg("y"));
    mod.def("apply_D_height", [](long p, int m, const std::string& x) {
        return to_string(apply_D_height(point(p, m, x), KernelContext(PrimeParams(p, m))));
    }, py::arg("p"), py::arg("m"), py::arg("x"));
    mod.def("weak_delta_check", [](const std::string& step_json, const std::string& y) {
        const StepFunction f = step_function_from_json(json::parse(step_json));
        const auto r = weak_delta_check(TatePoint(parse_rational(y), f.ctx()), f, KernelContext(f.ctx()));
        return py::make_tuple(to_string(r.lhs), to_string(r.rhs));
    }, py::arg("step_json"), py::arg("y"));

    mod.def("eigenvalue_radial", [](long p, int m, int n) { return to_string(eigenvalue_radial_closed(n, PrimeParams(p, m))); },
            py::arg("p"), py::arg("m"), py::arg("n"));
    mod.def("eigenvalue_angular", [](long p, int m, int l) {
        const PrimeParams ctx(p, m);
        return py::make_tuple(eigenvalue_angular(l, ctx), opt_rational(eigenvalue_angular_exact(l, ctx)));
    }, py::arg("p"), py::arg("m"), py::arg("l"));
    mod.def("spectrum_json", [](long p, int m, int max_conductor) {
        return spectrum_to_json(enumerate_spectrum(max_conductor, PrimeParams(p, m))).dump();
    }, py::arg("p"), py::arg("m"), py::arg("max_conductor"));
    mod.def("spectral_gap", [](long p, int m) { return spectral_gap(PrimeParams(p, m)); }, py::arg("p"), py::arg("m"));
    mod.def("weyl_count", [](long p, int m, const std::string& lambda) {
        const auto w = weyl_count(parse_rational(lambda), PrimeParams(p, m));
        return py::dict(py::arg("M") = w.M, py::arg("formula") = w.formula, py::arg("enumerated") = w.enumerated,
                        py::arg("m_lambda_M") = w.m_lambda_M);
    }, py::arg("p"), py::arg("m"), py::arg("lam"));

    mod.def("det_D", [](long p, int m) {
        const PrimeParams ctx(p, m);
        const auto d = det_D(ctx);
        const auto r = radial_det_contribution(ctx);
        return py::dict(py::arg("det") = to_string(d.value), py::arg("angular") = to_string(d.angular),
                        py::arg("radial") = to_string(d.radial), py::arg("zeta_prime_0") = r.zeta_prime_analytic);
    }, py::arg("p"), py::arg("m"));
    mod.def("zeta_pi", [](long p, int m, double s) { return zeta_pi_value(s, PrimeParams(p, m)); },
            py::arg("p"), py::arg("m"), py::arg("s"));

    mod.def("build_matrix", [](long p, int m, int level) {
        const auto mx = build_matrix(level, PrimeParams(p, m));
        std::vector<std::vector<std::string>> rows(mx.dimension());
        for (std::size_t i = 0; i < mx.dimension(); ++i) {
            for (std::size_t j = 0; j < mx.dimension(); ++j) rows[i].push_back(to_string(mx(i, j)));
        }
        std::vector<std::string> labels;
        for (const auto& b : mx.basis()) labels.push_back(ball_label(b));
        return py::make_tuple(labels, rows);
    }, py::arg("p"), py::arg("m"), py::arg("level"));
    mod.def("verify_matrix", [](long p, int m, int level) {
        const PrimeParams ctx(p, m);
        const auto r = verify_matrix(build_matrix(level, ctx), ctx);
        return py::dict(py::arg("ok") = r.ok(), py::arg("dimension") = r.dimension, py::arg("eigenvalues") = r.eigenvalues,
                        py::arg("expected") = r.expected, py::arg("violations") = r.violations);
    }, py::arg("p"), py::arg("m"), py::arg("level"));

    mod.def("two_point", [](long p, int m, const std::string& x1, const std::string& x2, double delta) {
        return two_point(point(p, m, x1), point(p, m, x2), delta);
    }, py::arg("p"), py::arg("m"), py::arg("x1"), py::arg("x2"), py::arg("delta"));
    mod.def("height_limit_check", [](long p, int m, const std::string& x1, const std::string& x2) {
        const auto r = height_limit_check(point(p, m, x1), point(p, m, x2));
        return py::make_tuple(r.estimate, r.target);
    }, py::arg("p"), py::arg("m"), py::arg("x1"), py::arg("x2"));
    mod.def("delta_from_mass", [](long p, double msq) {
        const auto d = delta_from_mass(msq, PrimeParams(p, 1));
        return py::make_tuple(d.delta_plus, d.delta_minus);
    }, py::arg("p"), py::arg("msq"));

    mod.def("tree_dot", [](long p, int m, int depth) {
        std::ostringstream os;
        write_dot(os, build_tree_quotient(PrimeParams(p, m), depth));
        return os.str();
    }, py::arg("p"), py::arg("m"), py::arg("depth"));
}
