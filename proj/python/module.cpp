#include "gsqg/diagnostics.hpp"
#include "gsqg/io.hpp"
#include "gsqg/solver.hpp"
#include "gsqg/special.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace gsqg;

namespace {

py::dict entry_to_dict(const BranchEntry& e) {
    py::dict d;
    d["eps"] = e.eps;
    d["scalar1"] = e.state.scalar1;
    d["scalar2"] = e.state.scalar2;
    d["p1"] = e.state.p1.a;
    d["p2"] = e.state.p2.a;
    d["residual_norm"] = e.diag.residual_norm;
    d["newton_iters"] = e.diag.newton_iters;
    d["parity_leak"] = e.diag.parity_leak;
    d["min_curvature1"] = e.diag.min_curvature1;
    d["min_curvature2"] = e.diag.min_curvature2;
    return d;
}

} // namespace

PYBIND11_MODULE(pygsqg, m) {
    m.doc() = "Co-rotating and traveling vortex patch pairs: solver bindings";

    py::register_exception<validation_error>(m, "ValidationError");
    py::register_exception<degenerate_boundary_error>(m, "DegenerateBoundaryError");
    py::register_exception<solve_error>(m, "SolveError");

    py::enum_<PairMode>(m, "PairMode")
        .value("corotating", PairMode::corotating)
        .value("traveling", PairMode::traveling);

    py::enum_<SigmaNorm>(m, "SigmaNorm")
        .value("calibrated", SigmaNorm::calibrated)
        .value("two_over_pi", SigmaNorm::two_over_pi)
        .value("raw", SigmaNorm::raw);

    py::class_<PairGeometry>(m, "PairGeometry")
        .def(py::init([](double alpha, double eps, double gamma1, double gamma2, double b1,
                         double b2, double d) {
                 return PairGeometry{alpha, eps, gamma1, gamma2, b1, b2, d};
             }),
             py::arg("alpha") = 1.0, py::arg("eps") = 0.0, py::arg("gamma1") = 1.0,
             py::arg("gamma2") = 1.0, py::arg("b1") = 1.0, py::arg("b2") = 1.0,
             py::arg("d") = 10.0)
        .def_readwrite("alpha", &PairGeometry::alpha)
        .def_readwrite("eps", &PairGeometry::eps)
        .def_readwrite("gamma1", &PairGeometry::gamma1)
        .def_readwrite("gamma2", &PairGeometry::gamma2)
        .def_readwrite("b1", &PairGeometry::b1)
        .def_readwrite("b2", &PairGeometry::b2)
        .def_readwrite("d", &PairGeometry::d);

    py::class_<SolveState>(m, "SolveState")
        .def(py::init<>())
        .def_readwrite("mode", &SolveState::mode)
        .def_readwrite("scalar1", &SolveState::scalar1)
        .def_readwrite("scalar2", &SolveState::scalar2)
        .def_property(
            "p1", [](const SolveState& s) { return s.p1.a; },
            [](SolveState& s, const std::vector<double>& v) {
                s.p1 = CosineSeries(static_cast<int>(v.size()));
                s.p1.a = v;
            })
        .def_property(
            "p2", [](const SolveState& s) { return s.p2.a; },
            [](SolveState& s, const std::vector<double>& v) {
                s.p2 = CosineSeries(static_cast<int>(v.size()));
                s.p2.a = v;
            });

    py::class_<Workspace>(m, "Workspace")
        .def(py::init<double, int, int>(), py::arg("alpha"), py::arg("N"), py::arg("M"));

    m.def("c_alpha", &c_alpha, py::arg("alpha"));
    m.def("gamma_fn", &gamma_fn, py::arg("x"));
    m.def("sigma_j", &sigma_j, py::arg("j"), py::arg("alpha"),
          py::arg("norm") = SigmaNorm::calibrated);
    m.def("sigma_table", &sigma_table, py::arg("N"), py::arg("alpha"),
          py::arg("norm") = SigmaNorm::calibrated);
    m.def("omega_star", &omega_star, py::arg("geometry"));
    m.def("xbar_star", &xbar_star, py::arg("geometry"));
    m.def("u_star", &u_star, py::arg("geometry"));
    m.def("trivial_state", &trivial_state, py::arg("mode"), py::arg("geometry"), py::arg("N"));

    m.def(
        "assemble",
        [](const PairGeometry& g, const SolveState& st, const Workspace& ws) {
            const ResidualPair r = assemble(g, st, ws);
            py::dict d;
            d["r1"] = r.r1.a;
            d["r2"] = r.r2.a;
            d["parity_leak1"] = r.parity_leak1;
            d["parity_leak2"] = r.parity_leak2;
            d["norm"] = r.norm2();
            return d;
        },
        py::arg("geometry"), py::arg("state"), py::arg("workspace"));

    m.def(
        "newton_solve",
        [](const PairGeometry& g, const SolveState& guess, const Workspace& ws,
           double tol, int max_iter) {
            SolverConfig cfg;
            cfg.N = guess.p1.modes();
            cfg.tol_residual = tol;
            cfg.max_iter = max_iter;
            NewtonReport rep;
            const SolveState sol = newton_solve(g, guess, ws, cfg, &rep);
            py::dict d;
            d["iterations"] = rep.iterations;
            d["final_residual"] = rep.final_residual;
            d["condition_estimate"] = rep.condition_estimate;
            return py::make_tuple(sol, d);
        },
        py::arg("geometry"), py::arg("guess"), py::arg("workspace"),
        py::arg("tol") = 1e-10, py::arg("max_iter") = 25);

    m.def(
        "continue_branch",
        [](PairMode mode, const PairGeometry& base, const std::vector<double>& schedule, int N,
           int M, double tol) {
            SolverConfig cfg;
            cfg.N = N;
            cfg.M = M;
            cfg.tol_residual = tol;
            const SolutionBranch b = continue_branch(mode, base, schedule, cfg);
            py::dict d;
            d["complete"] = b.complete;
            d["failure_reason"] = b.failure_reason;
            py::list entries;
            for (const auto& e : b.entries) entries.append(entry_to_dict(e));
            d["entries"] = entries;
            return d;
        },
        py::arg("mode"), py::arg("base"), py::arg("schedule"), py::arg("N") = 16,
        py::arg("M") = 64, py::arg("tol") = 1e-10);

    m.def(
        "signed_curvature",
        [](const std::vector<double>& coeffs, double s, double x) {
            CosineSeries p(static_cast<int>(coeffs.size()));
            p.a = coeffs;
            return signed_curvature(p, s, x);
        },
        py::arg("coeffs"), py::arg("s"), py::arg("x"));
}
