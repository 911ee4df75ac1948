#include <memory>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rose/bench.hpp"
#include "rose/driver.hpp"
#include "rose/krylov.hpp"
#include "rose/lbfgs.hpp"
#include "rose/operators.hpp"
#include "rose/problems.hpp"
#include "rose/scaling.hpp"

namespace py = pybind11;
using namespace rose;

namespace {

SymmetricOperator from_matrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix must be square");
  return SymmetricOperator::sparse(m.sparseView());
}

// Python None means unlimited memory.
std::size_t memory_from_py(const py::object& v) {
  if (v.is_none()) return kUnlimitedMemory;
  return v.cast<std::size_t>();
}

py::object memory_to_py(std::size_t m) {
  if (m == kUnlimitedMemory) return py::none();
  return py::int_(m);
}

}  // namespace

PYBIND11_MODULE(_rose, m) {
  m.doc() = "Structured L-BFGS with diagonal seed scaling";

  py::class_<SymmetricOperator>(m, "SymmetricOperator")
      .def_static("diagonal", [](Vector d) { return SymmetricOperator::diagonal(std::move(d)); },
                  py::arg("entries"))
      .def_static("scaled_identity", &SymmetricOperator::scaled_identity,
                  py::arg("tau"), py::arg("n"))
      .def_static("from_matrix", &from_matrix, py::arg("matrix"),
                  "Symmetric dense matrix, stored sparse")
      .def_property_readonly("dim", &SymmetricOperator::dim)
      .def("apply", &SymmetricOperator::apply, py::arg("v"))
      .def("__matmul__", &SymmetricOperator::apply)
      .def("diagonal_entries", [](const SymmetricOperator& op) { return op.diagonal(); })
      .def("to_dense", [](const SymmetricOperator& op) {
        return Eigen::MatrixXd(op.assemble());
      })
      .def("__add__", [](const SymmetricOperator& a, const SymmetricOperator& b) {
        return a + b;
      });

  m.def("five_point_laplacian", &five_point_laplacian, py::arg("m"),
        py::arg("scale") = 1.0);

  py::class_<BBScalars>(m, "BBScalars")
      .def_readonly("tau_s", &BBScalars::tau_s)
      .def_readonly("tau_g", &BBScalars::tau_g)
      .def_readonly("tau_z", &BBScalars::tau_z)
      .def_readonly("rho", &BBScalars::rho);
  m.def("bb_scalars", &bb_scalars, py::arg("s"), py::arg("z"));

  py::class_<CautiousParams>(m, "CautiousParams")
      .def(py::init<>())
      .def_readwrite("c0", &CautiousParams::c0)
      .def_readwrite("C0", &CautiousParams::C0)
      .def_readwrite("c1", &CautiousParams::c1)
      .def_readwrite("c2", &CautiousParams::c2);
  m.def("cautious_bounds", [](double grad_norm, const CautiousParams& p) {
    const auto b = cautious_bounds(grad_norm, p);
    return py::make_tuple(b.omega_l, b.omega_u);
  }, py::arg("grad_norm"), py::arg("params") = CautiousParams{});

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("iterations", &SolveReport::iterations)
      .def_readonly("relative_residual", &SolveReport::relative_residual)
      .def_readonly("preconditioned_residual", &SolveReport::preconditioned_residual)
      .def_readonly("converged", &SolveReport::converged)
      .def_readonly("breakdown", &SolveReport::breakdown)
      .def_readonly("residual_history", &SolveReport::residual_history);
  m.def("minres", [](const SymmetricOperator& op, const Vector& rhs,
                     std::optional<Vector> precond, int max_iter, double rel_tol) {
    const Vector p = precond ? *precond : diagonal_of(op);
    auto res = minres_solve(op, rhs, p, max_iter, rel_tol);
    return py::make_tuple(res.solution, res.report);
  }, py::arg("op"), py::arg("rhs"), py::arg("precond") = py::none(),
     py::arg("max_iter") = 50, py::arg("rel_tol") = 1e-2,
     "Jacobi preconditioned MINRES; precond defaults to diag(op)");

  py::class_<EsParams>(m, "EsParams")
      .def(py::init<>())
      .def_readwrite("eps0", &EsParams::eps0)
      .def_readwrite("eps1", &EsParams::eps1)
      .def_readwrite("eta0", &EsParams::eta0)
      .def_readwrite("eta1", &EsParams::eta1)
      .def_readwrite("eta2", &EsParams::eta2);
  m.def("es_budget", &es_budget, py::arg("j_prev"), py::arg("j_curr"),
        py::arg("params") = EsParams{});

  // Problems. Python subclasses are not supported; use CallbackObjective.
  py::class_<StructuredObjective, std::shared_ptr<StructuredObjective>>(
      m, "StructuredObjective")
      .def_property_readonly("dim", &StructuredObjective::dim)
      .def("value", &StructuredObjective::value)
      .def("gradient", &StructuredObjective::gradient)
      .def("regularizer_hessian", &StructuredObjective::regularizer_hessian);
  py::class_<QuadraticObjective, StructuredObjective,
             std::shared_ptr<QuadraticObjective>>(m, "QuadraticObjective")
      .def_property_readonly("hessian", &QuadraticObjective::hessian)
      .def_property_readonly("minimizer", &QuadraticObjective::minimizer);
  py::class_<ToyNonconvexObjective, StructuredObjective,
             std::shared_ptr<ToyNonconvexObjective>>(m, "ToyNonconvexObjective");
  py::class_<CallbackObjective, StructuredObjective,
             std::shared_ptr<CallbackObjective>>(m, "CallbackObjective")
      .def(py::init<Index, CallbackObjective::ValueFn, CallbackObjective::GradientFn,
                    CallbackObjective::HessianFn>(),
           py::arg("n"), py::arg("value"), py::arg("gradient"),
           py::arg("regularizer_hessian") = CallbackObjective::HessianFn{});

  m.def("quadratic_benchmark", [](double alpha, double stencil_scale, int first_exponent) {
    return std::make_shared<QuadraticObjective>(
        make_quadratic_benchmark(alpha, stencil_scale, first_exponent));
  }, py::arg("alpha"), py::arg("stencil_scale") = 1.0, py::arg("first_exponent") = 0);
  m.def("toy_nonconvex", [](Index n, double alpha) {
    return std::make_shared<ToyNonconvexObjective>(make_toy_nonconvex(n, alpha));
  }, py::arg("n"), py::arg("alpha"));
  m.def("toy_start", &bench::toy_start, py::arg("n"));

  py::enum_<SeedMode>(m, "SeedMode")
      .value("DIAGONAL_DS", SeedMode::DiagonalDs)
      .value("DIAGONAL_DG", SeedMode::DiagonalDg)
      .value("SCALAR_TAU_S", SeedMode::ScalarTauS)
      .value("SCALAR_TAU_G", SeedMode::ScalarTauG)
      .value("SCALAR_TAU_Z", SeedMode::ScalarTauZ);
  py::enum_<BoundChoice>(m, "BoundChoice")
      .value("FULL", BoundChoice::Full)
      .value("UPPER_Z", BoundChoice::UpperZ)
      .value("BB_BAND", BoundChoice::BBBand);
  py::enum_<LineSearchMode>(m, "LineSearchMode")
      .value("ARMIJO", LineSearchMode::Armijo)
      .value("WEAK_WOLFE", LineSearchMode::WeakWolfe)
      .value("STRONG_WOLFE", LineSearchMode::StrongWolfe);
  py::enum_<Status>(m, "Status")
      .value("GRADIENT_TOL", Status::GradientTol)
      .value("FAIR_TRIPLE", Status::FairTriple)
      .value("MAX_OUTER", Status::MaxOuter)
      .value("LINE_SEARCH_FAIL", Status::LineSearchFail)
      .value("NON_FINITE", Status::NonFinite);

  py::class_<LineSearchConfig>(m, "LineSearchConfig")
      .def(py::init<>())
      .def_readwrite("sigma", &LineSearchConfig::sigma)
      .def_readwrite("beta", &LineSearchConfig::beta)
      .def_readwrite("eta", &LineSearchConfig::eta)
      .def_readwrite("mode", &LineSearchConfig::mode)
      .def_readwrite("max_trials", &LineSearchConfig::max_trials);
  py::class_<InnerSolverConfig>(m, "InnerSolverConfig")
      .def(py::init<>())
      .def_readwrite("adaptive", &InnerSolverConfig::adaptive)
      .def_readwrite("max_iter", &InnerSolverConfig::max_iter)
      .def_readwrite("rel_tol", &InnerSolverConfig::rel_tol)
      .def_readwrite("es", &InnerSolverConfig::es);

  py::class_<RoseConfig>(m, "RoseConfig")
      .def(py::init<>())
      .def_property("memory",
                    [](const RoseConfig& c) { return memory_to_py(c.memory); },
                    [](RoseConfig& c, const py::object& v) { c.memory = memory_from_py(v); },
                    "Stored pairs; None for unlimited")
      .def_readwrite("eps", &RoseConfig::eps)
      .def_readwrite("c_s", &RoseConfig::c_s)
      .def_readwrite("cautious", &RoseConfig::cautious)
      .def_readwrite("seed_mode", &RoseConfig::seed_mode)
      .def_readwrite("bound_choice", &RoseConfig::bound_choice)
      .def_readwrite("line_search", &RoseConfig::line_search)
      .def_readwrite("inner", &RoseConfig::inner)
      .def_readwrite("exact_seed_solve", &RoseConfig::exact_seed_solve)
      .def_readwrite("max_outer", &RoseConfig::max_outer)
      .def_readwrite("fair_stopping", &RoseConfig::fair_stopping)
      .def_readwrite("tau_init", &RoseConfig::tau_init)
      .def("validate", &RoseConfig::validate);
  m.def("method_config", [](const std::string& name, const RoseConfig& base) {
    return bench::method_from_name(name, base).config;
  }, py::arg("name"), py::arg("base") = RoseConfig{},
     "Config for a named method such as rose-dg-full or scalar-taug");

  py::class_<IterationRecord>(m, "IterationRecord")
      .def_readonly("k", &IterationRecord::k)
      .def_readonly("J", &IterationRecord::J)
      .def_readonly("grad_norm", &IterationRecord::grad_norm)
      .def_readonly("alpha", &IterationRecord::alpha)
      .def_readonly("f_evals", &IterationRecord::f_evals)
      .def_readonly("inner_iterations", &IterationRecord::inner_iterations)
      .def_readonly("pair_accepted", &IterationRecord::pair_accepted)
      .def_readonly("seed_lower", &IterationRecord::seed_lower)
      .def_readonly("seed_upper", &IterationRecord::seed_upper)
      .def_readonly("omega_l", &IterationRecord::omega_l)
      .def_readonly("omega_u", &IterationRecord::omega_u)
      .def_readonly("seed_min", &IterationRecord::seed_min)
      .def_readonly("seed_max", &IterationRecord::seed_max)
      .def_readonly("steepest_fallback", &IterationRecord::steepest_fallback);

  py::class_<RoseResult>(m, "RoseResult")
      .def_readonly("x", &RoseResult::x_final)
      .def_readonly("initial_value", &RoseResult::initial_value)
      .def_readonly("final_value", &RoseResult::final_value)
      .def_readonly("final_grad_norm", &RoseResult::final_grad_norm)
      .def_readonly("records", &RoseResult::records)
      .def_readonly("status", &RoseResult::status)
      .def_readonly("diagnostic", &RoseResult::diagnostic)
      .def_property_readonly("iterations", &RoseResult::iterations)
      .def_property_readonly("f_evals", &RoseResult::total_f_evals)
      .def_property_readonly("inner_iterations", &RoseResult::total_inner_iterations)
      .def_property_readonly("solved", &RoseResult::solved);

  m.def("minimize", [](const StructuredObjective& problem, const Vector& x0,
                       const RoseConfig& cfg) {
    return rose_minimize(problem, x0, cfg);
  }, py::arg("problem"), py::arg("x0"), py::arg("config") = RoseConfig{});

  m.def("performance_profile", [](const Eigen::MatrixXd& t,
                                  const std::vector<std::string>& methods) {
    const auto p = bench::performance_profile(t, methods);
    py::dict curves;
    for (const auto& c : p.curves) curves[py::str(c.method)] = c.points;
    return py::make_tuple(curves, p.dropped_problems);
  }, py::arg("t"), py::arg("methods"),
     "Returns ({method: [(tau, rho), ...]}, dropped_problems); inf marks failures");
}
