#pragma once

#include <vector>

#include "ginse/sop.hpp"

namespace ginse {

// ---- Gaussian-weight kernel -------------------------------------------------

// varkappa_N^{(g)}(z, w), plain evaluation (small arguments only).
cplx gaussian_kernel(int N, cplx z, cplx w);

// e^{-2zw} varkappa_N^{(g)}(z, w), evaluated with every term log-scaled; safe
// for N up to 2000 at z, w = O(sqrt(N)).
cplx gaussian_kernel_hat(int N, cplx z, cplx w);

// d/dx of the hat kernel at x = a (a real):
// 2 [Q(2N, 2a^2) - (2a^2)^N e^{-a^2} Q(N, a^2) / (2N-1)!!]
double gaussian_kernel_diag_deriv(int N, double a);

// L-hat function: (2(z-a)^2 - 1) hat-kernel + truncated-exponential tails.
cplx L_hat(int k, cplx z, double a);

// ---- hat-rescaled pre-overlap SOPs ------------------------------------------

// Per-point evaluator: fixes (z, a) and produces, for all k up to kmax, the
// hat kernel, L-hat, and the rescaled SOPs
//   qhat_odd(k)  = 2^{k+2} e^{-2za} (z-a)^3 f_k(a^2) q_{2k+1}^{(pre)}(z)
//   qhat_even(k) = 2^{k+3} e^{-2za} (z-a)^3 f_k(a^2) q_{2k}^{(pre)}(z)
// in one O(kmax) sweep.
class HatSeries {
  public:
    HatSeries(int kmax, cplx z, double a);
    cplx kappa_hat(int k) const { return kappa_[k].value(); }
    cplx l_hat(int k) const { return lhat_[k].value(); }
    LogScaled qhat_odd(int k) const;
    LogScaled qhat_even(int k) const;
    cplx point() const { return z_; }

  private:
    cplx z_;
    double a_;
    std::vector<LogScaled> kappa_, lhat_;  // index k = 0..kmax
};

LogScaled q_hat_scaled(bool odd, int k, cplx z, double a);
cplx q_hat_eval(bool odd, int k, cplx z, double a);

// ---- pre / overlap kernels ---------------------------------------------------

// tilde kernel e^{2a^2-2za-2wa} (z-a)^3 (w-a)^3 varkappa_N^{(pre)}(z,w),
// summed over the hat-rescaled SOPs (O(1) in bulk/edge scaling regimes).
cplx pre_kernel_tilde(int N, cplx z, cplx w, double a);
cplx pre_kernel_tilde(int N, const HatSeries& sz, const HatSeries& sw, double a);

// tilde overlap kernel e^{2a^2-2za-2wa} (z-a)^4 (w-a)^4 varkappa_N^{(over)}
// (N kernel terms), via the Christoffel three-term form built on the N-term
// pre kernel and qhat_{2N}, with the u -> a limit taken by a 4-point
// Richardson extrapolation.
cplx over_kernel_tilde(int N, cplx z, cplx w, double a);

// finite-N origin (a = 0) kernels from the section-3 double sums; the G-sum
// halves are templated so they can be evaluated on jets
template <class TZ, class TW>
auto origin_pre_G(int N, TZ z, TW w) -> decltype(z * w) {
    using R = decltype(z * w);
    auto z2 = 2.0 * z * z;
    auto w2 = 2.0 * w * w;
    auto A = (3.0 * std::sqrt(2.0) / 8.0) * z;  // (2k+3)(sqrt2 z)^{2k+1}/(2k+4)!!
    auto t = (2.0 / 3.0) * (w2 * 0.0 + 1.0);    // (2l+2)(sqrt2 w)^{2l}/(2l+3)!!
    decltype(t) S = 0.0 * t;
    R sum = 0.0 * (z * w);
    for (int k = 0; k < N; ++k) {
        S = S + t;
        sum = sum + A * S;
        t = ((2.0 * k + 4.0) / ((2.0 * k + 2.0) * (2.0 * k + 5.0))) * (t * w2);
        A = ((2.0 * k + 5.0) / ((2.0 * k + 3.0) * (2.0 * k + 6.0))) * (A * z2);
    }
    return 2.0 * std::sqrt(2.0) * sum;
}

template <class TZ, class TW>
auto origin_over_G(int N, TZ z, TW w) -> decltype(z * w) {
    using R = decltype(z * w);
    auto z2 = z * z;
    auto w2 = w * w;
    auto A = (2.0 / std::tgamma(3.5)) * z;      // (k+2) z^{2k+1}/Gamma(k+7/2)
    auto t = (1.5 / 2.0) * (w2 * 0.0 + 1.0);    // (l+3/2) w^{2l}/Gamma(l+3)
    decltype(t) S = 0.0 * t;
    R sum = 0.0 * (z * w);
    for (int k = 0; k < N; ++k) {
        S = S + t;
        sum = sum + A * S;
        t = ((2.0 * k + 5.0) / ((2.0 * k + 3.0) * (k + 3.0))) * (t * w2);
        A = ((k + 3.0) / ((k + 2.0) * (k + 3.5))) * (A * z2);
    }
    return std::sqrt(kPi) * sum;
}

cplx origin_pre_kernel(int N, cplx z, cplx w);
cplx origin_over_kernel(int N, cplx z, cplx w);

struct KernelHandle {
    enum class Variant { gaussian, pre, over, origin_pre, origin_over };
    enum class Strategy { coeff_sum, hat_stable };
    Variant variant = Variant::gaussian;
    int N = 1;
    double a = 0.0;
    Strategy strategy = Strategy::coeff_sum;

    // raw kernel value (moderate arguments)
    cplx value(cplx z, cplx w) const;
    // rescaled tilde value (pre / over variants)
    cplx tilde(cplx z, cplx w) const;
};

// ---- correlation functions ---------------------------------------------------

struct CorrRequest {
    enum class WeightTag { gaussian, over };
    WeightTag weight = WeightTag::gaussian;
    int N = 1;
    double a = 0.0;
    std::vector<cplx> points;
};

// R_{N,k} assembled from the 2k x 2k Pfaffian with hat/tilde-rescaled blocks.
double corr(const CorrRequest& req);

// Shared Pfaffian assembly: rows (z_1, conj z_1, ..., z_k, conj z_k), entries
// for conjugate rows completed by Schwarz reflection (real-coefficient
// kernels), so the assembled value is exactly real.
double pfaffian_point_process(const std::function<cplx(cplx, cplx)>& kernel,
                              const std::function<double(cplx)>& weight,
                              const std::vector<cplx>& points);

// ---- conditional mean diagonal overlap ---------------------------------------

// a real; exact finite-N closed-form pipeline, positive.
double mean_diag_overlap(int N, double a);

// complex conditioning point, small-N moment-Pfaffian oracle (N <= 8).
double mean_diag_overlap_complex_smallN(int N, cplx x);

}  // namespace ginse
