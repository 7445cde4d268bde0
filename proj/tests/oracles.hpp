// Test-only oracles, independent of the library implementation paths they
// check: long-double series, brute-force expansions, finite differences.
#pragma once

#include <complex>
#include <random>
#include <vector>

#include "ginse/scalar.hpp"

namespace oracle {

using ginse::cplx;
using lcplx = std::complex<long double>;

// erf by plain 200-term Taylor series in long double.
inline cplx erf_series(cplx zz) {
    lcplx z(zz.real(), zz.imag());
    lcplx z2 = z * z;
    lcplx term = z, sum = z;
    for (int n = 1; n <= 200; ++n) {
        term *= -z2 / (long double)(n);
        sum += term / (long double)(2 * n + 1);
    }
    const long double two_over_sqrt_pi = 1.1283791670955125738961589031215L;
    sum *= two_over_sqrt_pi;
    return cplx(double(sum.real()), double(sum.imag()));
}

// e_k by direct term-by-term long double sum.
inline cplx trunc_exp_direct(int k, cplx zz) {
    lcplx z(zz.real(), zz.imag());
    lcplx term = 1.0L, sum = 1.0L;
    for (int j = 1; j <= k; ++j) {
        term *= z / (long double)j;
        sum += term;
    }
    return cplx(double(sum.real()), double(sum.imag()));
}

inline double rel_gap(cplx got, cplx want) {
    double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline cplx random_cplx(std::mt19937_64& g, double radius) {
    std::uniform_real_distribution<double> u(-radius, radius);
    return {u(g), u(g)};
}

// 4th order central differences of a complex function along the real
// direction of its argument.
template <class F>
cplx diff1_fd(F f, cplx z, double h) {
    return (-f(z + 2 * h) + 8.0 * f(z + h) - 8.0 * f(z - h) + f(z - 2 * h)) / (12.0 * h);
}
template <class F>
cplx diff2_fd(F f, cplx z, double h) {
    return (-f(z + 2 * h) + 16.0 * f(z + h) - 30.0 * f(z) + 16.0 * f(z - h) - f(z - 2 * h)) /
           (12.0 * h * h);
}

}  // namespace oracle
