#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace ginse {

using cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrtPi = 1.77245385090551602730;

// Log-scaled complex value: value = phase * exp(log_mag), with |phase| = 1
// (phase = 0 encodes an exact zero). Products and quotients of values whose
// magnitudes would overflow double stay representable.
struct LogScaled {
    double log_mag = -std::numeric_limits<double>::infinity();
    cplx phase = 0.0;

    LogScaled() = default;
    LogScaled(double lm, cplx ph) : log_mag(lm), phase(ph) {}

    static LogScaled zero() { return LogScaled(); }
    static LogScaled one() { return {0.0, 1.0}; }

    static LogScaled from_value(cplx v) {
        double a = std::abs(v);
        if (a == 0.0) return zero();
        return {std::log(a), v / a};
    }
    static LogScaled from_real(double x) {
        if (x == 0.0) return zero();
        return {std::log(std::abs(x)), x > 0 ? 1.0 : -1.0};
    }
    // value = exp(w) for complex w
    static LogScaled from_log(cplx w) {
        return {w.real(), std::polar(1.0, w.imag())};
    }

    bool is_zero() const { return phase == cplx(0.0); }

    cplx value() const {
        if (is_zero()) return 0.0;
        return phase * std::exp(log_mag);
    }
    double real_value() const { return value().real(); }

    LogScaled operator*(const LogScaled& o) const {
        if (is_zero() || o.is_zero()) return zero();
        return {log_mag + o.log_mag, phase * o.phase};
    }
    LogScaled operator/(const LogScaled& o) const {
        if (is_zero()) return zero();
        return {log_mag - o.log_mag, phase / o.phase};
    }
    LogScaled operator-() const {
        if (is_zero()) return zero();
        return {log_mag, -phase};
    }
    LogScaled operator+(const LogScaled& o) const {
        if (is_zero()) return o;
        if (o.is_zero()) return *this;
        const LogScaled& big = (log_mag >= o.log_mag) ? *this : o;
        const LogScaled& sml = (log_mag >= o.log_mag) ? o : *this;
        cplx rel = (sml.phase / big.phase) * std::exp(sml.log_mag - big.log_mag);
        cplx t = 1.0 + rel;
        double a = std::abs(t);
        if (a == 0.0) return zero();
        return {big.log_mag + std::log(a), big.phase * (t / a)};
    }
    LogScaled operator-(const LogScaled& o) const { return *this + (-o); }
};

inline LogScaled operator*(double c, const LogScaled& v) {
    return LogScaled::from_real(c) * v;
}

// Running sum of log-scaled terms.
class ScaledSum {
  public:
    void add(const LogScaled& t) { acc_ = acc_ + t; }
    void add_value(cplx v) { add(LogScaled::from_value(v)); }
    void add_log(cplx w) { add(LogScaled::from_log(w)); }
    const LogScaled& total() const { return acc_; }
    cplx value() const { return acc_.value(); }

  private:
    LogScaled acc_ = LogScaled::zero();
};

}  // namespace ginse
