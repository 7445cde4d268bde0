#pragma once

#include "ginse/asymptotics.hpp"
#include "ginse/jet.hpp"

namespace ginse {

// second order operator (z-a) d2 - (2(z-a)^2 + 2) d1 - 2(z-a) v
cplx apply_D(const Jet2& f, cplx z, double a);

// normalized residual of the finite-N differential equation for the tilde
// pre-overlap kernel (coeff-sum evaluation lifted to jets), N <= 40
double residual_pre_ode(int N, double a, cplx z, cplx w);

// origin (a = 0) identities for the hat pre / overlap kernels
double residual_origin_pre(int N, cplx z, cplx w);
double residual_origin_over(int N, cplx z, cplx w);

// residuals of the limiting kernels against their differential equations
struct LimitOdeReport {
    double origin;  // origin limit kernel
    double bulk;    // bulk tilde pre kernel at chi
    double edge;    // edge particular solution K (quadrature-limited)
};
LimitOdeReport residual_limit_odes(cplx z, cplx w, double chi);

}  // namespace ginse
