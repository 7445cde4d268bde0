#pragma once

#include <stdexcept>

#include "ginse/scalar.hpp"

namespace ginse {

// log(n!) and log(n!!)
double log_factorial(int n);
double log_double_factorial(int n);

// Truncated exponential e_k(x) = sum_{j=0}^{k} x^j / j!, e_{-1} = 0.
cplx trunc_exp(int k, cplx x);
// Same value in log-scaled form; safe for |x| far beyond 700.
LogScaled trunc_exp_scaled(int k, cplx x);

// f_k(x) = sum_{j=0}^{k} (k+1-j) x^j / j! = (k+1) e_k(x) - x e_{k-1}(x).
cplx f_poly(int k, cplx x);
// Log-scaled f_k for real x >= 0 (all terms positive).
LogScaled f_poly_scaled(int k, double x);

// F_{p,sigma}(x) = sum_{j=0}^{p} Gamma(p-j+sigma+1) / (Gamma(j+1) Gamma(p-j+1)) x^j.
// Throws std::invalid_argument for sigma <= 0.
cplx cap_F(int p, double sigma, cplx x);
// Log-scaled variant for real x >= 0.
LogScaled cap_F_scaled(int p, double sigma, double x);

// Complex error function, accurate to ~1e-13 relative for |Re z|, |Im z| <= 10.
// Arguments with |z| > 30 set *reduced_accuracy (when given) and still return
// a best-effort value.
cplx erf_cplx(cplx z, bool* reduced_accuracy = nullptr);
cplx erfc_cplx(cplx z, bool* reduced_accuracy = nullptr);

// Scaled complementary error function exp(x^2) erfc(x) for real x.
double erfcx_real(double x);

// Regularized upper incomplete gamma of integer order:
// Q(n, z) = e^{-z} e_{n-1}(z), n >= 1. Evaluated with the dominant series
// term factored out, so it stays accurate for n up to a few thousand and
// |z| up to several thousand in the regime where Q itself is representable.
cplx reg_gamma_q_int(int n, cplx z);

}  // namespace ginse
