#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ginse/diffcheck.hpp"
#include "ginse/figures.hpp"
#include "ginse/montecarlo.hpp"
#include "ginse/verify.hpp"

namespace py = pybind11;
using namespace ginse;

PYBIND11_MODULE(ginse, m) {
    m.doc() = "eigenvector-overlap statistics of the symplectic Ginibre ensemble";

    // special functions
    m.def("erf", [](cplx z) { return erf_cplx(z); }, py::arg("z"));
    m.def("erfc", [](cplx z) { return erfc_cplx(z); }, py::arg("z"));
    m.def("trunc_exp", [](int k, cplx x) { return trunc_exp(k, x); }, py::arg("k"), py::arg("x"));
    m.def("f_poly", [](int k, cplx x) { return f_poly(k, x); }, py::arg("k"), py::arg("x"));
    m.def("cap_F", [](int p, double s_, cplx x) { return cap_F(p, s_, x); }, py::arg("p"), py::arg("sigma"), py::arg("x"));
    m.def("reg_gamma_q", [](int n, cplx z) { return reg_gamma_q_int(n, z); }, py::arg("n"), py::arg("z"));

    // linear algebra
    m.def("pfaffian",
          [](const CMatrix& mtx) { return pfaffian(SkewMatrix(mtx)).to_cplx(); },
          py::arg("skew_matrix"));
    m.def("eig_all", &eig_all, py::arg("matrix"));

    // skew-orthogonal polynomials
    m.def(
        "sop_pre",
        [](int N, double a) {
            SopFamily f = sop_pre_explicit(N, a);
            std::vector<std::vector<cplx>> evens, odds;
            std::vector<double> norms;
            for (int k = 0; k < N; ++k) {
                evens.push_back(f.evens[k].coeffs());
                odds.push_back(f.odds[k].coeffs());
                norms.push_back(f.norm(k));
            }
            return py::make_tuple(evens, odds, norms);
        },
        py::arg("N"), py::arg("a"),
        "explicit pre-overlap SOPs: (even coeffs, odd coeffs, skew norms)");
    m.def("partition_ratio",
          [](int N, double a) { return partition_ratio(N, a).real_value(); },
          py::arg("N"), py::arg("a"), "N Z_{N-1}^(over)(a) / Z_N^(g)");

    // kernels and observables
    m.def("gaussian_kernel", [](int N, cplx z, cplx w) { return gaussian_kernel(N, z, w); }, py::arg("N"), py::arg("z"), py::arg("w"));
    m.def("gaussian_kernel_hat", [](int N, cplx z, cplx w) { return gaussian_kernel_hat(N, z, w); }, py::arg("N"), py::arg("z"), py::arg("w"));
    m.def("pre_kernel_tilde", [](int N, cplx z, cplx w, double a) { return pre_kernel_tilde(N, z, w, a); }, py::arg("N"), py::arg("z"), py::arg("w"), py::arg("a"));
    m.def("over_kernel_tilde", [](int N, cplx z, cplx w, double a) { return over_kernel_tilde(N, z, w, a); }, py::arg("N"), py::arg("z"), py::arg("w"), py::arg("a"));
    m.def("mean_diag_overlap", &mean_diag_overlap, py::arg("N"), py::arg("a"),
          "conditional mean diagonal overlap at a real conditioning point");
    m.def("mean_diag_overlap_complex", &mean_diag_overlap_complex_smallN, py::arg("N"),
          py::arg("x"), "small-N oracle for complex conditioning points (N <= 8)");
    m.def(
        "corr_over",
        [](int N, double a, const std::vector<cplx>& pts) {
            return corr({CorrRequest::WeightTag::over, N, a, pts});
        },
        py::arg("N"), py::arg("a"), py::arg("points"));
    m.def(
        "corr_gaussian",
        [](int N, const std::vector<cplx>& pts) {
            return corr({CorrRequest::WeightTag::gaussian, N, 0.0, pts});
        },
        py::arg("N"), py::arg("points"));

    // limiting objects
    m.def("rho_bulk", &rho_bulk, py::arg("p"));
    m.def("rho_edge", &rho_edge, py::arg("chi"));
    m.def("origin_pre_limit", &origin_pre_limit, py::arg("z"), py::arg("w"));
    m.def("origin_over_limit", &origin_over_limit, py::arg("z"), py::arg("w"));
    m.def("kappa_bulk_over", &kappa_bulk_over, py::arg("zeta"), py::arg("eta"),
          py::arg("chi"));
    m.def("kappa_edge_over", &kappa_edge_over, py::arg("zeta"), py::arg("eta"),
          py::arg("chi"));
    m.def(
        "limit_corr",
        [](const std::string& regime, double chi, const std::vector<cplx>& pts) {
            LimitRegime reg{regime == "bulk" ? LimitRegime::Kind::bulk
                                             : LimitRegime::Kind::edge,
                            0.0, chi};
            return limit_corr(reg, pts);
        },
        py::arg("regime"), py::arg("chi"), py::arg("points"));

    // differential-equation residuals
    m.def("residual_pre_ode", &residual_pre_ode, py::arg("N"), py::arg("a"),
          py::arg("z"), py::arg("w"));
    m.def("residual_origin_over", &residual_origin_over, py::arg("N"), py::arg("z"),
          py::arg("w"));

    // Monte Carlo
    m.def(
        "mc_batch",
        [](int N, int samples, std::uint64_t seed) {
            MCBatch b = run_batch(N, samples, seed);
            std::vector<std::vector<cplx>> eigs;
            std::vector<std::vector<double>> ovl;
            double worst_sum = 0.0;
            for (const auto& s : b.samples) {
                eigs.push_back(s.eigenvalues);
                ovl.push_back(s.overlaps);
                worst_sum = std::max(worst_sum, s.sum_rule_defect);
            }
            return py::make_tuple(eigs, ovl, worst_sum);
        },
        py::arg("N"), py::arg("samples"), py::arg("seed"),
        "returns (eigenvalues, diagonal overlaps, worst sum-rule defect)");

    // verification
    m.def(
        "verify",
        [](const std::string& suite, bool quick) {
            VerifyReport rep = verify_suite(suite, quick);
            std::ostringstream os;
            write_report(os, rep);
            return py::make_tuple(rep.all_pass(), os.str());
        },
        py::arg("suite") = "all", py::arg("quick") = true);
}
