#pragma once

#include <cassert>
#include <vector>

#include "ginse/scalar.hpp"

namespace ginse {

// Dense polynomial, complex coefficients in ascending degree.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly constant(cplx v) { return Poly({v}); }
    static Poly monomial(int degree, cplx lead = 1.0) {
        std::vector<cplx> c(degree + 1, 0.0);
        c[degree] = lead;
        return Poly(std::move(c));
    }

    int degree() const { return int(c_.size()) - 1; }  // -1 for zero poly
    const std::vector<cplx>& coeffs() const { return c_; }
    cplx coeff(int j) const { return (j >= 0 && j < int(c_.size())) ? c_[j] : 0.0; }
    void set_coeff(int j, cplx v) {
        if (j >= int(c_.size())) c_.resize(j + 1, 0.0);
        c_[j] = v;
    }

    cplx eval(cplx z) const {
        cplx r = 0.0;
        for (int j = int(c_.size()) - 1; j >= 0; --j) r = r * z + c_[j];
        return r;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<cplx> d(c_.size() - 1);
        for (size_t j = 1; j < c_.size(); ++j) d[j - 1] = double(j) * c_[j];
        return Poly(std::move(d));
    }

    Poly operator+(const Poly& o) const {
        std::vector<cplx> r(std::max(c_.size(), o.c_.size()), 0.0);
        for (size_t j = 0; j < c_.size(); ++j) r[j] += c_[j];
        for (size_t j = 0; j < o.c_.size(); ++j) r[j] += o.c_[j];
        return Poly(std::move(r));
    }
    Poly operator-(const Poly& o) const { return *this + (-1.0) * o; }
    Poly operator*(const Poly& o) const {
        if (c_.empty() || o.c_.empty()) return Poly();
        std::vector<cplx> r(c_.size() + o.c_.size() - 1, 0.0);
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(cplx s, const Poly& p) {
        std::vector<cplx> r = p.c_;
        for (auto& v : r) v *= s;
        return Poly(std::move(r));
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (auto& v : c_) m = std::max(m, std::abs(v));
        return m;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == cplx(0.0)) c_.pop_back();
    }
    std::vector<cplx> c_;
};

// Synthetic division by (z - root): p = quotient * (z - root) + remainder.
struct DivLinear {
    Poly quotient;
    cplx remainder;
};
inline DivLinear divide_linear(const Poly& p, cplx root) {
    const auto& c = p.coeffs();
    if (c.empty()) return {Poly(), 0.0};
    std::vector<cplx> q(c.size() > 1 ? c.size() - 1 : 0, 0.0);
    cplx carry = c.back();
    for (int j = int(c.size()) - 2; j >= 0; --j) {
        q[j] = carry;
        carry = c[j] + root * carry;
    }
    return {Poly(std::move(q)), carry};
}

}  // namespace ginse
