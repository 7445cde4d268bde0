#include "ginse/special.hpp"

#include <array>
#include <vector>

namespace ginse {

double log_factorial(int n) { return std::lgamma(double(n) + 1.0); }

double log_double_factorial(int n) {
    if (n <= 0) return 0.0;  // (-1)!! = 0!! = 1
    if (n % 2 == 1) {
        int k = (n - 1) / 2;  // n = 2k+1, (2k+1)!! = (2k+1)!/(2^k k!)
        return log_factorial(2 * k + 1) - k * std::log(2.0) - log_factorial(k);
    }
    int k = n / 2;  // (2k)!! = 2^k k!
    return k * std::log(2.0) + log_factorial(k);
}

cplx trunc_exp(int k, cplx x) {
    if (k < 0) return 0.0;
    if (std::abs(x) > 650.0) return trunc_exp_scaled(k, x).value();
    cplx term = 1.0, sum = 1.0;
    for (int j = 0; j < k; ++j) {
        term *= x / double(j + 1);
        sum += term;
    }
    return sum;
}

LogScaled trunc_exp_scaled(int k, cplx x) {
    if (k < 0) return LogScaled::zero();
    double ax = std::abs(x);
    if (ax == 0.0) return LogScaled::one();
    int m = std::min(k, int(std::floor(ax)));
    // sum of t_j / t_m, all ratios have magnitude <= 1
    cplx sum = 1.0;
    cplx r = 1.0;
    for (int j = m; j < k; ++j) {  // upward
        r *= x / double(j + 1);
        sum += r;
        if (std::abs(r) < 1e-20) break;
    }
    r = 1.0;
    for (int j = m; j > 0; --j) {  // downward
        r *= double(j) / x;
        sum += r;
        if (std::abs(r) < 1e-20) break;
    }
    cplx log_tm = double(m) * std::log(x) - log_factorial(m);
    return LogScaled::from_log(log_tm) * LogScaled::from_value(sum);
}

cplx f_poly(int k, cplx x) {
    if (k < 0) return 0.0;
    cplx term = 1.0, sum = double(k + 1);
    for (int j = 1; j <= k; ++j) {
        term *= x / double(j);
        sum += double(k + 1 - j) * term;
    }
    return sum;
}

LogScaled f_poly_scaled(int k, double x) {
    if (k < 0) return LogScaled::zero();
    if (x == 0.0) return LogScaled::from_real(double(k + 1));
    int m = std::min(k, int(std::floor(x)));
    double lt_m = m * std::log(x) - log_factorial(m);
    double sum = double(k + 1 - m);
    double r = 1.0;
    for (int j = m + 1; j <= k; ++j) {
        r *= x / double(j);
        sum += double(k + 1 - j) * r;
        if (r < 1e-22) break;
    }
    r = 1.0;
    for (int j = m; j > 0; --j) {
        r *= double(j) / x;
        sum += double(k + 1 - (j - 1)) * r;
        if (r < 1e-22) break;
    }
    return LogScaled::from_log(lt_m) * LogScaled::from_real(sum);
}

cplx cap_F(int p, double sigma, cplx x) {
    if (sigma <= 0.0) throw std::invalid_argument("cap_F: sigma must be > 0");
    if (p < 0) return 0.0;
    // t_0 = Gamma(p+sigma+1)/Gamma(p+1); t_{j+1}/t_j = x (p-j) / ((j+1)(p-j+sigma))
    cplx term = std::exp(std::lgamma(p + sigma + 1.0) - log_factorial(p));
    cplx sum = term;
    for (int j = 0; j < p; ++j) {
        term *= x * double(p - j) / (double(j + 1) * (double(p - j) + sigma));
        sum += term;
    }
    return sum;
}

LogScaled cap_F_scaled(int p, double sigma, double x) {
    if (sigma <= 0.0) throw std::invalid_argument("cap_F: sigma must be > 0");
    if (p < 0) return LogScaled::zero();
    double lt = std::lgamma(p + sigma + 1.0) - log_factorial(p);
    ScaledSum s;
    for (int j = 0; j <= p; ++j) {
        s.add(LogScaled::from_log(cplx(lt, 0.0)));
        if (j < p && x > 0.0)
            lt += std::log(x) + std::log(double(p - j)) -
                  std::log(double(j + 1)) - std::log(double(p - j) + sigma);
        else if (j < p)
            break;  // x == 0: only j = 0 contributes
    }
    return s.total();
}

// ---------------------------------------------------------------------------
// Complex error function.
//
// Small |z|: Taylor series. Otherwise reduce to the first quadrant and use
// erfc(z) = e^{-z^2} w(iz) with w evaluated by Weideman's rational
// approximation, which is uniformly accurate on the closed upper half-plane.
// ---------------------------------------------------------------------------

namespace {

constexpr int kWeidemanN = 64;

// Coefficients of the rational approximation, computed once by the midpoint
// DFT recipe; accuracy ~1e-14 over Im(z) >= 0 for this N.
const std::array<double, kWeidemanN>& weideman_coeffs() {
    static const std::array<double, kWeidemanN> coeffs = [] {
        const int N = kWeidemanN;
        const int M = 2 * N;
        const double L = std::sqrt(N / std::sqrt(2.0));
        std::vector<double> f(M, 0.0);
        std::vector<double> theta(M);
        for (int k = 0; k < M; ++k) {
            theta[k] = (kPi / M) * (2.0 * k - M + 1.0);
            if (std::abs(std::abs(theta[k]) - kPi) < 1e-15) continue;
            double t = L * std::tan(theta[k] / 2.0);
            f[k] = std::exp(-t * t) * (L * L + t * t);
        }
        // a_n = (1/M) sum_k f(theta_k) exp(-i n theta_k), real part
        std::array<double, kWeidemanN> a{};
        for (int n = 1; n <= N; ++n) {
            double s = 0.0;
            for (int k = 0; k < M; ++k) s += f[k] * std::cos(n * theta[k]);
            a[N - n] = s / M;  // stored highest-degree first for Horner
        }
        return a;
    }();
    return coeffs;
}

// Faddeeva w(z) = e^{-z^2} erfc(-iz) for Im z >= 0.
cplx faddeeva_upper(cplx z) {
    const int N = kWeidemanN;
    const double L = std::sqrt(N / std::sqrt(2.0));
    const auto& a = weideman_coeffs();
    cplx iz(-z.imag(), z.real());
    cplx Z = (L + iz) / (L - iz);
    cplx p = 0.0;
    for (int n = 0; n < N; ++n) p = p * Z + a[n];
    cplx d = L - iz;
    return 2.0 * p / (d * d) + (1.0 / kSqrtPi) / d;
}

// erfc on Re z >= 0
cplx erfc_first_half(cplx z) {
    cplx iz(-z.imag(), z.real());
    return std::exp(-z * z) * faddeeva_upper(iz);
}

cplx erf_taylor(cplx z) {
    cplx z2 = z * z;
    cplx term = z, sum = z;
    for (int n = 1; n < 40; ++n) {
        term *= -z2 / double(n);
        cplx add = term / double(2 * n + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return (2.0 / kSqrtPi) * sum;
}

}  // namespace

cplx erf_cplx(cplx z, bool* reduced_accuracy) {
    if (reduced_accuracy) *reduced_accuracy = std::abs(z) > 30.0;
    if (std::abs(z) <= 1.0) return erf_taylor(z);
    bool neg = z.real() < 0.0 || (z.real() == 0.0 && z.imag() < 0.0);
    if (neg) z = -z;
    bool conj = z.imag() < 0.0;
    if (conj) z = std::conj(z);
    cplx v = 1.0 - erfc_first_half(z);
    if (conj) v = std::conj(v);
    if (neg) v = -v;
    return v;
}

cplx erfc_cplx(cplx z, bool* reduced_accuracy) {
    if (reduced_accuracy) *reduced_accuracy = std::abs(z) > 30.0;
    if (z.real() >= 0.0) {
        bool conj = z.imag() < 0.0;
        if (conj) z = std::conj(z);
        cplx v = (std::abs(z) <= 1.0) ? 1.0 - erf_taylor(z) : erfc_first_half(z);
        return conj ? std::conj(v) : v;
    }
    return 2.0 - erfc_cplx(-z);
}

double erfcx_real(double x) {
    if (x < 0.0) return 2.0 * std::exp(x * x) - erfcx_real(-x);
    cplx w = faddeeva_upper(cplx(0.0, x));  // w(ix) = e^{x^2} erfc(x)
    return w.real();
}

cplx reg_gamma_q_int(int n, cplx z) {
    if (n < 1) throw std::invalid_argument("reg_gamma_q_int: n >= 1 required");
    if (z == cplx(0.0)) return 1.0;
    // Q(n, z) = e^{-z} e_{n-1}(z)
    LogScaled e = trunc_exp_scaled(n - 1, z);
    if (e.is_zero()) return 0.0;
    return LogScaled::from_log(-z + cplx(e.log_mag, 0.0)).value() * e.phase;
}

}  // namespace ginse
