#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "csl/bp.hpp"
#include "csl/experiments.hpp"
#include "csl/model.hpp"
#include "csl/operators.hpp"
#include "csl/sampling.hpp"
#include "csl/solvers.hpp"
#include "csl/thresholding.hpp"
#include "csl/verification.hpp"
#include "csl/wavelets.hpp"

namespace py = pybind11;
using namespace csl;

namespace {

SolverConfig make_config(int max_iterations, double tol) {
    SolverConfig cfg;
    cfg.max_iterations = max_iterations;
    cfg.increment_tolerance = tol;
    return cfg;
}

py::dict result_to_dict(const SolverResult& r) {
    py::dict d;
    d["estimate"] = r.estimate;
    d["iterations"] = r.iterations_used;
    d["converged"] = r.stop_reason == StopReason::converged;
    return d;
}

}  // namespace

PYBIND11_MODULE(cslcs, m) {
    m.doc() = "Sparse recovery with sparsity in levels: IHT(L), CoSaMP(L), BP and oracles";

    py::class_<LevelStructure>(m, "LevelStructure")
        .def(py::init<std::vector<int>>())
        .def_property_readonly("boundaries", &LevelStructure::boundaries)
        .def_property_readonly("dimension", &LevelStructure::dimension)
        .def_property_readonly("num_levels", &LevelStructure::num_levels);

    py::class_<LocalSparsities>(m, "LocalSparsities")
        .def(py::init<std::vector<int>>())
        .def_property_readonly("counts", &LocalSparsities::counts)
        .def_property_readonly("total", &LocalSparsities::total);

    m.def("is_sparse_in_levels",
          [](const Signal& x, const std::vector<int>& s, const std::vector<int>& levels) {
              return is_sparse_in_levels(x, LocalSparsities(s), LevelStructure(levels));
          },
          py::arg("x"), py::arg("s"), py::arg("levels"));

    m.def("random_sparse_in_levels",
          [](const std::vector<int>& s, const std::vector<int>& levels, std::uint64_t seed) {
              Rng rng(seed);
              return random_sparse_in_levels(LocalSparsities(s), LevelStructure(levels), rng);
          },
          py::arg("s"), py::arg("levels"), py::arg("seed"));

    m.def("hard_threshold", &hard_threshold, py::arg("x"), py::arg("s"));
    m.def("hard_threshold_levels",
          [](const Signal& x, const std::vector<int>& s, const std::vector<int>& levels) {
              return hard_threshold_levels(x, LocalSparsities(s), LevelStructure(levels));
          },
          py::arg("x"), py::arg("s"), py::arg("levels"));
    m.def("best_s_term_error_l1", &best_s_term_error_l1, py::arg("x"), py::arg("s"));

    m.def("iht",
          [](const DenseMatrix& a, const Signal& y, int s, int max_iterations, double tol) {
              DenseOperator op(a);
              return result_to_dict(iht(op, y, s, make_config(max_iterations, tol)));
          },
          py::arg("a"), py::arg("y"), py::arg("s"), py::arg("max_iterations") = 1000,
          py::arg("tol") = 1e-4);

    m.def("ihtl",
          [](const DenseMatrix& a, const Signal& y, const std::vector<int>& s,
             const std::vector<int>& levels, int max_iterations, double tol) {
              DenseOperator op(a);
              return result_to_dict(ihtl(op, y, LocalSparsities(s), LevelStructure(levels),
                                         make_config(max_iterations, tol)));
          },
          py::arg("a"), py::arg("y"), py::arg("s"), py::arg("levels"),
          py::arg("max_iterations") = 1000, py::arg("tol") = 1e-4);

    m.def("cosamp",
          [](const DenseMatrix& a, const Signal& y, int s, int max_iterations, double tol) {
              DenseOperator op(a);
              return result_to_dict(cosamp(op, y, s, make_config(max_iterations, tol)));
          },
          py::arg("a"), py::arg("y"), py::arg("s"), py::arg("max_iterations") = 1000,
          py::arg("tol") = 1e-4);

    m.def("cosampl",
          [](const DenseMatrix& a, const Signal& y, const std::vector<int>& s,
             const std::vector<int>& levels, int max_iterations, double tol) {
              DenseOperator op(a);
              return result_to_dict(cosampl(op, y, LocalSparsities(s), LevelStructure(levels),
                                            make_config(max_iterations, tol)));
          },
          py::arg("a"), py::arg("y"), py::arg("s"), py::arg("levels"),
          py::arg("max_iterations") = 1000, py::arg("tol") = 1e-4);

    m.def("basis_pursuit",
          [](const DenseMatrix& a, const Signal& y, double tol, long max_iterations) {
              DenseOperator op(a);
              BpResult r = basis_pursuit(op, y, tol, max_iterations);
              py::dict d;
              d["estimate"] = r.estimate;
              d["iterations"] = r.iterations_used;
              d["converged"] = r.converged;
              d["feasibility"] = r.feasibility;
              d["duality_gap"] = r.duality_gap;
              return d;
          },
          py::arg("a"), py::arg("y"), py::arg("tol") = 1e-6, py::arg("max_iterations") = 1000000L);

    m.def("haar_forward",
          [](const Signal& v) { return haar_forward(v, HaarBasisSpec(static_cast<int>(v.size()))); });
    m.def("haar_inverse",
          [](const Signal& c) { return haar_inverse(c, HaarBasisSpec(static_cast<int>(c.size()))); });
    m.def("eval_piecewise_f", py::vectorize(eval_piecewise_f));
    m.def("haar_coefficients_of_f",
          [](int n, int oversample) { return haar_coefficients_of_f(HaarBasisSpec(n), oversample); },
          py::arg("n"), py::arg("oversample") = 8);

    m.def("gaussian_matrix",
          [](int m, int n, std::uint64_t seed) {
              Rng rng(seed);
              return gaussian_operator(m, n, rng)->to_dense();
          },
          py::arg("m"), py::arg("n"), py::arg("seed"));

    m.def("ric_bruteforce", &ric_bruteforce, py::arg("a"), py::arg("s"));
    m.def("ricl_bruteforce",
          [](const DenseMatrix& a, const std::vector<int>& s, const std::vector<int>& levels) {
              return ricl_bruteforce(a, LocalSparsities(s), LevelStructure(levels));
          },
          py::arg("a"), py::arg("s"), py::arg("levels"));

    m.def("fourier_band_allocation", &fourier_band_allocation, py::arg("m"), py::arg("r"));

    m.def("run_trial",
          [](const std::string& solver, int m, const std::vector<int>& s,
             const std::vector<int>& levels, int n, std::uint64_t seed) {
              ModelSpec model{LocalSparsities(s), LevelStructure(levels)};
              SolverConfig cfg;
              TrialOutcome out =
                  run_trial(solver_kind_from_string(solver), m, model, n, seed, cfg);
              py::dict d;
              d["relative_error"] = out.relative_error;
              d["success"] = out.success;
              d["iterations"] = out.iterations;
              return d;
          },
          py::arg("solver"), py::arg("m"), py::arg("s"), py::arg("levels"), py::arg("n"),
          py::arg("seed"));
}
