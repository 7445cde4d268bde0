#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "ginse/kernels.hpp"

namespace ginse {

// limiting mean-overlap profiles
double rho_bulk(double p);
double rho_edge(double chi);

// bulk limit of the L-hat function (also the S2 fundamental solution)
cplx lhat_bulk(cplx zeta, double chi);

// origin (a = 0) limiting kernels; near zeta*eta = 0 the convergent series
// representation is used instead of the closed form
cplx origin_pre_limit(cplx z, cplx w);
cplx origin_over_limit(cplx z, cplx w);
struct OriginLimits {
    cplx pre, over;
};
OriginLimits origin_limits(cplx zeta, cplx eta);

// bulk limiting overlap kernel: the origin kernel shifted by chi
cplx kappa_bulk_over(cplx zeta, cplx eta, double chi);

// Gaussian edge kernel by semi-infinite quadrature; derivative by the first
// order ODE identity (no numerical differentiation)
cplx gaussian_edge_kernel(cplx zeta, double chi);
cplx gaussian_edge_kernel_dzeta(cplx zeta, double chi);

// Edge building blocks at fixed chi. The kappa-hat memo is guarded, so one
// instance may be shared across threads.
class EdgeBlocks {
  public:
    explicit EdgeBlocks(double chi);

    double chi() const { return chi_; }
    double F() const { return F_; }
    double B() const { return B_; }

    cplx S1(cplx zeta) const;
    cplx S2(cplx zeta) const;
    cplx S1p(cplx zeta) const;
    cplx S2p(cplx zeta) const;
    cplx S1pp(cplx zeta) const;
    cplx S2pp(cplx zeta) const;
    cplx W(cplx zeta) const;  // Wronskian -8 e^{(z-chi)^2} (z-chi)^2

    cplx kappa_e(cplx eta) const;        // memoized gaussian edge kernel
    cplx kappa_e_dzeta(cplx eta) const;  // its derivative (ODE identity)

    // d/deta [kappa_e(eta)/(eta-chi)], series for |eta-chi| < 1e-3
    cplx dk_ratio(cplx eta) const;
    // E(eta, chi): same construction for the combined numerator
    cplx E(cplx eta) const;

    cplx A(cplx zeta) const;
    // F(t, eta | chi) / (t - chi)^3 : all removable factors cancelled
    cplx F_reg(cplx t, cplx eta) const;
    cplx C(cplx zeta) const;
    cplx K(cplx zeta, cplx eta) const;

    // diagonal derivatives d^n/deta^n kappa_e |_{eta=chi}, n = 0..nmax
    const std::vector<double>& kappa_diag_derivs() const { return D_; }

  private:
    cplx eta_part_dk(cplx eta) const;  // eta-dependent factor cache helper
    double chi_;
    double F_, B_;
    std::vector<double> D_;   // kappa_e diagonal derivatives
    std::vector<double> Pn_;  // Taylor coefficients of the E-numerator
    mutable std::mutex memo_mtx_;
    mutable std::map<std::pair<double, double>, cplx> memo_;
};

// assembled edge limiting overlap kernel (per-chi cached blocks)
cplx kappa_edge_over(cplx zeta, cplx eta, double chi);

struct LimitRegime {
    enum class Kind { bulk, edge };
    Kind kind = Kind::bulk;
    double p = 0.0;    // bulk position, |p| < 1 (diagnostic only)
    double chi = 0.0;  // offset
};

// limiting correlation function R_k^{(over)}
double limit_corr(const LimitRegime& regime, const std::vector<cplx>& points);

// relative gaps between finite-N quantities and their limiting forms
struct AsymRefReport {
    double fsum_gap;             // e^{-a^2} f_N(a^2) vs N+1-a^2
    double lhat_gap;             // L-hat_N vs bulk limit at a spot point
    double edge_prefactor_gap;   // cubic-law coefficient vs B(chi)
};
AsymRefReport asymptotic_refs(int N, double p, double chi);

}  // namespace ginse
