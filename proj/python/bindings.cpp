// Python bindings for the main operations: model solving, Burr sampling,
// product-limit tables, the estimation chain, the second-order maps and the
// asymptotic variances.

#include "trunctail/asymptotics.hpp"
#include "trunctail/errors.hpp"
#include "trunctail/estimators.hpp"
#include "trunctail/montecarlo.hpp"
#include "trunctail/product_limit.hpp"
#include "trunctail/sampling.hpp"
#include "trunctail/second_order.hpp"
#include "trunctail/selection.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

namespace py = pybind11;
using namespace trunctail;

PYBIND11_MODULE(_trunctail, m) {
    m.doc() = "tail-index and second-order estimation under random right truncation";

    py::register_exception<EmptySampleError>(m, "EmptySampleError");
    py::register_exception<TieError>(m, "TieError");
    py::register_exception<DegenerateDenominatorError>(m, "DegenerateDenominatorError");
    py::register_exception<NotAdmissibleError>(m, "NotAdmissibleError");
    py::register_exception<QuadratureError>(m, "QuadratureError");

    py::class_<TruncationModel>(m, "TruncationModel")
        .def(py::init<double, double, double>(), py::arg("gamma1"), py::arg("gamma2"),
             py::arg("delta") = 0.25)
        .def_readonly("gamma1", &TruncationModel::gamma1)
        .def_readonly("gamma2", &TruncationModel::gamma2)
        .def_readonly("delta", &TruncationModel::delta)
        .def_property_readonly("p", &TruncationModel::observed_fraction)
        .def_property_readonly("gamma", &TruncationModel::gamma_star)
        .def_property_readonly("rho1", &TruncationModel::rho1)
        .def_property_readonly("beta1", &TruncationModel::beta1);

    py::class_<ObservedSample>(m, "ObservedSample")
        .def_static(
            "from_pairs",
            [](std::vector<double> x, std::vector<double> y) {
                return ObservedSample::from_pairs(std::move(x), std::move(y));
            },
            py::arg("x"), py::arg("y"))
        .def_readonly("x", &ObservedSample::x)
        .def_readonly("y", &ObservedSample::y)
        .def("__len__", &ObservedSample::size);

    py::class_<ProductLimitTables>(m, "ProductLimitTables")
        .def_readonly("sorted_x", &ProductLimitTables::sorted_x)
        .def_readonly("c_at_x", &ProductLimitTables::c_at_x)
        .def_readonly("f_at_x", &ProductLimitTables::f_at_x)
        .def_readonly("ratio", &ProductLimitTables::ratio);

    py::class_<Rho1Estimate>(m, "Rho1Estimate")
        .def_readonly("s_stat", &Rho1Estimate::s_stat)
        .def_property_readonly("rho",
                               [](const Rho1Estimate& r) {
                                   return r.rho ? py::cast(*r.rho) : py::none();
                               })
        .def_property_readonly("admissible", &Rho1Estimate::admissible);

    py::class_<TailEstimates>(m, "TailEstimates")
        .def_readonly("gamma_bmn", &TailEstimates::gamma_bmn)
        .def_readonly("rho1", &TailEstimates::rho1)
        .def_readonly("rho1_used", &TailEstimates::rho1_used)
        .def_readonly("a0", &TailEstimates::a0)
        .def_readonly("gamma1", &TailEstimates::gamma1)
        .def_readonly("k_used", &TailEstimates::k_used)
        .def_readonly("upsilon_used", &TailEstimates::upsilon_used)
        .def_readonly("alpha_used", &TailEstimates::alpha_used)
        .def("__repr__", [](const TailEstimates& t) {
            std::ostringstream oss;
            oss << "TailEstimates(gamma1=" << t.gamma1 << ", gamma_bmn=" << t.gamma_bmn
                << ", rho1_used=" << t.rho1_used << ", k=" << t.k_used << ")";
            return oss.str();
        });

    m.def("solve_gamma2", &solve_gamma2, py::arg("gamma1"), py::arg("p"));
    m.def("burr_quantile", &burr_quantile, py::arg("u"), py::arg("gamma"), py::arg("delta"));
    m.def("burr_survival", &burr_survival, py::arg("x"), py::arg("gamma"), py::arg("delta"));
    m.def("draw_truncated_sample", &draw_truncated_sample, py::arg("model"), py::arg("n_pairs"),
          py::arg("seed"));

    m.def("build_tables", &build_tables, py::arg("sample"));
    m.def("coverage", &coverage, py::arg("sample"), py::arg("x"));
    m.def("woodroofe_cdf", &woodroofe_cdf, py::arg("sample"), py::arg("x"));
    m.def("bmn_weights", &bmn_weights, py::arg("tables"), py::arg("k"));
    m.def("upper_tail_mass", &upper_tail_mass, py::arg("tables"), py::arg("upsilon"));

    m.def("m_alpha", &m_alpha, py::arg("tables"), py::arg("upsilon"), py::arg("alpha"));
    m.def("q_alpha_stat", &q_alpha_stat, py::arg("tables"), py::arg("upsilon"), py::arg("alpha"));
    m.def("s_alpha_stat", &s_alpha_stat, py::arg("tables"), py::arg("upsilon"), py::arg("alpha"));
    m.def("estimate_rho1", &estimate_rho1, py::arg("tables"), py::arg("upsilon"),
          py::arg("alpha"));
    m.def("estimate_a0", &estimate_a0, py::arg("tables"), py::arg("k"), py::arg("rho1"));
    m.def("estimate_gamma1_reduced", &estimate_gamma1_reduced, py::arg("tables"), py::arg("k"),
          py::arg("rho1"));
    m.def(
        "full_pipeline",
        [](const ObservedSample& sample, std::size_t k, double epsilon, double alpha,
           double fallback_rho) {
            PipelineConfig cfg;
            cfg.epsilon = epsilon;
            cfg.alpha = alpha;
            cfg.fallback_rho = fallback_rho;
            return full_pipeline(sample, k, cfg);
        },
        py::arg("sample"), py::arg("k"), py::arg("epsilon") = 0.01, py::arg("alpha") = 2.0,
        py::arg("fallback_rho") = -1.0);

    m.def("u_n", &u_n, py::arg("n"), py::arg("epsilon") = 0.01);
    m.def(
        "reiss_thomas_k",
        [](const std::function<double(std::size_t)>& curve, std::size_t n, double epsilon,
           double theta_rt, std::size_t k_min, double k_max_fraction) {
            SelectionConfig cfg;
            cfg.epsilon = epsilon;
            cfg.theta_rt = theta_rt;
            cfg.k_min = k_min;
            cfg.k_max_fraction = k_max_fraction;
            return reiss_thomas_k(curve, n, cfg);
        },
        py::arg("curve"), py::arg("n"), py::arg("epsilon") = 0.01, py::arg("theta_rt") = 0.3,
        py::arg("k_min") = 2, py::arg("k_max_fraction") = 0.9);

    m.def("s_alpha", &s_alpha, py::arg("rho"), py::arg("alpha"));
    m.def("s_alpha_inverse", &s_alpha_inverse, py::arg("s"), py::arg("alpha"));
    m.def("s_alpha_prime", &s_alpha_prime, py::arg("rho"), py::arg("alpha"));
    m.def("q_alpha", &q_alpha, py::arg("rho"), py::arg("gamma1"), py::arg("alpha"));
    m.def("delta_factor", &delta_factor, py::arg("alpha"));

    py::class_<SecondOrderContext>(m, "SecondOrderContext")
        .def(py::init<double, double, double, double, double>(), py::arg("gamma1"),
             py::arg("gamma2"), py::arg("rho1"), py::arg("beta1"), py::arg("alpha") = 2.0)
        .def_readonly("gamma1", &SecondOrderContext::gamma1)
        .def_readonly("gamma2", &SecondOrderContext::gamma2)
        .def_readonly("rho1", &SecondOrderContext::rho1)
        .def_readonly("beta1", &SecondOrderContext::beta1)
        .def_readonly("alpha", &SecondOrderContext::alpha)
        .def_property_readonly("gamma", &SecondOrderContext::gamma_star);

    py::class_<ConstantBundle>(m, "ConstantBundle")
        .def_readonly("m2", &ConstantBundle::m2)
        .def_readonly("tau1", &ConstantBundle::tau1)
        .def_readonly("tau2", &ConstantBundle::tau2)
        .def_readonly("tau3", &ConstantBundle::tau3)
        .def_readonly("tau4", &ConstantBundle::tau4)
        .def_readonly("tau5", &ConstantBundle::tau5)
        .def_readonly("tau6", &ConstantBundle::tau6)
        .def_readonly("eta1", &ConstantBundle::eta1)
        .def_readonly("eta2", &ConstantBundle::eta2)
        .def_readonly("xi", &ConstantBundle::xi)
        .def_readonly("mu", &ConstantBundle::mu);

    m.def("constants", &constants, py::arg("ctx"));
    m.def("delta_alpha_fn", &delta_alpha_fn, py::arg("ctx"), py::arg("s"));
    m.def("d_fn", &d_fn, py::arg("ctx"), py::arg("s"));
    m.def("sigma_bmn_sq", &sigma_bmn_sq, py::arg("ctx"));
    m.def("sigma_alpha_sq", &sigma_alpha_sq, py::arg("ctx"), py::arg("rel_tol") = 1e-8);
    m.def("sigma_star_sq", &sigma_star_sq, py::arg("ctx"), py::arg("rel_tol") = 1e-8);
    m.def("normal_limit_bias", &normal_limit_bias, py::arg("ctx"), py::arg("lambda1"),
          py::arg("lambda2"));

    py::class_<McCell>(m, "McCell")
        .def_readonly("gamma1", &McCell::gamma1)
        .def_readonly("p", &McCell::p)
        .def_readonly("n_pairs", &McCell::n_pairs)
        .def_readonly("mean_n", &McCell::mean_n)
        .def_readonly("mean_upsilon_star", &McCell::mean_upsilon_star)
        .def_readonly("mean_k_star_gamma1", &McCell::mean_k_star_gamma1)
        .def_readonly("mean_k_star_bmn", &McCell::mean_k_star_bmn)
        .def_readonly("abias_rho", &McCell::abias_rho)
        .def_readonly("rmse_rho", &McCell::rmse_rho)
        .def_readonly("abias_gamma1", &McCell::abias_gamma1)
        .def_readonly("rmse_gamma1", &McCell::rmse_gamma1)
        .def_readonly("abias_bmn", &McCell::abias_bmn)
        .def_readonly("rmse_bmn", &McCell::rmse_bmn)
        .def_readonly("not_admissible", &McCell::not_admissible)
        .def_readonly("failures", &McCell::failures);

    m.def(
        "run_cell",
        [](double gamma1, double p, std::size_t n_pairs, std::size_t replicates,
           std::uint64_t seed, double delta, double epsilon, double theta_rt) {
            McConfig cfg;
            cfg.replicates = replicates;
            cfg.seed = seed;
            cfg.delta = delta;
            cfg.selection.epsilon = epsilon;
            cfg.selection.theta_rt = theta_rt;
            return run_cell(gamma1, p, n_pairs, cfg);
        },
        py::arg("gamma1"), py::arg("p"), py::arg("n_pairs"), py::arg("replicates") = 1000,
        py::arg("seed") = 1, py::arg("delta") = 0.25, py::arg("epsilon") = 0.01,
        py::arg("theta_rt") = 0.3);
}
