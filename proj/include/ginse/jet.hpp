#pragma once

#include "ginse/special.hpp"

namespace ginse {

// Second-order forward jet in one complex variable.
struct Jet2 {
    cplx v = 0.0, d1 = 0.0, d2 = 0.0;

    Jet2() = default;
    Jet2(cplx value) : v(value) {}
    Jet2(cplx value, cplx first, cplx second) : v(value), d1(first), d2(second) {}
    static Jet2 variable(cplx z) { return {z, 1.0, 0.0}; }

    Jet2 operator+(const Jet2& o) const { return {v + o.v, d1 + o.d1, d2 + o.d2}; }
    Jet2 operator-(const Jet2& o) const { return {v - o.v, d1 - o.d1, d2 - o.d2}; }
    Jet2 operator-() const { return {-v, -d1, -d2}; }
    Jet2 operator*(const Jet2& o) const {
        return {v * o.v, d1 * o.v + v * o.d1, d2 * o.v + 2.0 * d1 * o.d1 + v * o.d2};
    }
    Jet2 operator/(const Jet2& o) const {
        cplx q = v / o.v;
        cplx q1 = (d1 - q * o.d1) / o.v;
        cplx q2 = (d2 - 2.0 * q1 * o.d1 - q * o.d2) / o.v;
        return {q, q1, q2};
    }
    friend Jet2 operator*(cplx c, const Jet2& j) { return {c * j.v, c * j.d1, c * j.d2}; }
    friend Jet2 operator+(cplx c, const Jet2& j) { return {c + j.v, j.d1, j.d2}; }
    friend Jet2 operator-(cplx c, const Jet2& j) { return {c - j.v, -j.d1, -j.d2}; }
    Jet2 operator*(cplx c) const { return {v * c, d1 * c, d2 * c}; }
    Jet2 operator+(cplx c) const { return {v + c, d1, d2}; }
    Jet2 operator-(cplx c) const { return {v - c, d1, d2}; }
    Jet2 operator/(cplx c) const { return {v / c, d1 / c, d2 / c}; }
};

inline Jet2 exp(const Jet2& j) {
    cplx e = std::exp(j.v);
    return {e, e * j.d1, e * (j.d2 + j.d1 * j.d1)};
}

inline Jet2 erf(const Jet2& j) {
    cplx e = erf_cplx(j.v);
    cplx g = (2.0 / kSqrtPi) * std::exp(-j.v * j.v);  // erf'
    cplx g1 = -2.0 * j.v * g;                         // erf''
    return {e, g * j.d1, g * j.d2 + g1 * j.d1 * j.d1};
}

inline Jet2 pow_int(const Jet2& j, int n) {
    Jet2 r(cplx(1.0));
    for (int i = 0; i < n; ++i) r = r * j;
    return r;
}

// regularized upper incomplete gamma Q(n, .) lifted to jets:
// Q'(n, z) = -z^{n-1} e^{-z} / (n-1)!
inline Jet2 reg_gamma_q_int(int n, const Jet2& j) {
    cplx q = reg_gamma_q_int(n, j.v);
    cplx g = -std::exp(double(n - 1) * std::log(j.v) - j.v - log_factorial(n - 1));
    cplx g1 = g * (double(n - 1) / j.v - 1.0);
    return {q, g * j.d1, g * j.d2 + g1 * j.d1 * j.d1};
}

}  // namespace ginse
