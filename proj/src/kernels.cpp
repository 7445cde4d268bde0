#include "ginse/kernels.hpp"

#include <cstring>
#include <map>
#include <mutex>

#include "ginse/special.hpp"

namespace ginse {

namespace {

LogScaled ls_log(cplx w) { return LogScaled::from_log(w); }

// complex log that tolerates zero (returns a zero LogScaled via caller checks)
bool near_zero(cplx v) { return v == cplx(0.0); }

}  // namespace

cplx gaussian_kernel(int N, cplx z, cplx w) {
    if (N < 0 || N > 2000) throw std::invalid_argument("gaussian_kernel: 0 <= N <= 2000");
    // A_k(x) = (sqrt2 x)^{2k+1}/(2k+1)!!, S_k(x) = sum_{l<=k} (sqrt2 x)^{2l}/(2l)!!
    cplx z2 = 2.0 * z * z, w2 = 2.0 * w * w;
    cplx Az = std::sqrt(2.0) * z, Aw = std::sqrt(2.0) * w;
    cplx Sz = 0.0, Sw = 0.0, tz = 1.0, tw = 1.0;
    cplx sum = 0.0;
    for (int k = 0; k < N; ++k) {
        Sz += tz;
        Sw += tw;
        sum += Az * Sw - Aw * Sz;
        tz *= z2 / (2.0 * k + 2.0);
        tw *= w2 / (2.0 * k + 2.0);
        Az *= z2 / (2.0 * k + 3.0);
        Aw *= w2 / (2.0 * k + 3.0);
    }
    return std::sqrt(2.0) * sum;
}

cplx gaussian_kernel_hat(int N, cplx z, cplx w) {
    if (N < 0 || N > 2000) throw std::invalid_argument("gaussian_kernel_hat: 0 <= N <= 2000");
    if (near_zero(z) || near_zero(w)) return std::exp(-2.0 * z * w) * gaussian_kernel(N, z, w);
    const cplx lz2 = std::log(2.0 * z * z), lw2 = std::log(2.0 * w * w);
    const cplx lAz0 = 0.5 * std::log(cplx(2.0)) + std::log(z);
    const cplx lAw0 = 0.5 * std::log(cplx(2.0)) + std::log(w);
    ScaledSum Sz, Sw, total;
    cplx ltz = 0.0, ltw = 0.0;  // log of S-terms
    cplx lAz = lAz0, lAw = lAw0;
    for (int k = 0; k < N; ++k) {
        Sz.add_log(ltz);
        Sw.add_log(ltw);
        total.add(ls_log(lAz) * Sw.total());
        total.add(-(ls_log(lAw) * Sz.total()));
        ltz += lz2 - std::log(2.0 * k + 2.0);
        ltw += lw2 - std::log(2.0 * k + 2.0);
        lAz += lz2 - std::log(2.0 * k + 3.0);
        lAw += lw2 - std::log(2.0 * k + 3.0);
    }
    LogScaled out = LogScaled::from_real(std::sqrt(2.0)) * total.total() * ls_log(-2.0 * z * w);
    return out.value();
}

double gaussian_kernel_diag_deriv(int N, double a) {
    if (N < 1) throw std::invalid_argument("gaussian_kernel_diag_deriv: N >= 1");
    double q1 = reg_gamma_q_int(2 * N, 2.0 * a * a).real();
    double second = 0.0;
    if (a != 0.0) {
        double l = N * std::log(2.0 * a * a) - a * a - log_double_factorial(2 * N - 1);
        second = std::exp(l) * reg_gamma_q_int(N, a * a).real();
    }
    return 2.0 * (q1 - second);
}

cplx L_hat(int k, cplx z, double a) {
    if (k == 0) return 0.0;
    cplx d = z - a;
    cplx t1 = (2.0 * d * d - 1.0) * gaussian_kernel_hat(k, z, a);
    cplx t2 = 2.0 * d * reg_gamma_q_int(2 * k, 2.0 * z * a);
    cplx t3 = 0.0;
    if (!near_zero(z)) {
        cplx l = double(k) * std::log(2.0 * z * z) - log_double_factorial(2 * k - 1) + a * a -
                 2.0 * z * a;
        t3 = 2.0 * d * std::exp(l) * reg_gamma_q_int(k, a * a);
    }
    return t1 + t2 - t3;
}

// ---------------------------------------------------------------------------
// HatSeries: one O(kmax) sweep producing kappa-hat and L-hat for every k.
// ---------------------------------------------------------------------------

HatSeries::HatSeries(int kmax, cplx z, double a) : z_(z), a_(a) {
    kappa_.assign(kmax + 1, LogScaled::zero());
    lhat_.assign(kmax + 1, LogScaled::zero());
    const bool z_zero = near_zero(z), a_zero = (a == 0.0);
    const cplx za2 = 2.0 * z * a;
    const LogScaled ehat = ls_log(-za2);  // e^{-2za}

    // S_k(x) = sum_{l<=k} (2x^2)^l/(2l)!!, A_k(x) = sqrt(2) x (2x^2)^k/(2k+1)!!
    const cplx lz2 = z_zero ? cplx(0.0) : std::log(2.0 * z * z);
    const double la2 = a_zero ? 0.0 : std::log(2.0 * a * a);
    // generic term x^j/j! in log form, zero base handled by the caller
    auto lterm = [](cplx lx, int j) { return double(j) * lx - log_factorial(j); };

    ScaledSum Sz, Sa, ker;   // kernel prefix sum over m < k
    ScaledSum e2za, eka;     // e_{2k-1}(2za) and e_{k-1}(a^2)
    const cplx l2za = (z_zero || a_zero) ? cplx(0.0) : std::log(za2);

    const cplx d = z - a;
    const LogScaled dfac = LogScaled::from_value(2.0 * d * d - 1.0);
    const LogScaled two_d = LogScaled::from_value(2.0 * d);
    const LogScaled sqrt2 = LogScaled::from_real(std::sqrt(2.0));

    for (int k = 0; k <= kmax; ++k) {
        kappa_[k] = sqrt2 * ker.total() * ehat;
        if (k >= 1) {
            LogScaled Qz = (z_zero || a_zero) ? LogScaled::one() : e2za.total() * ehat;
            LogScaled Pa = LogScaled::zero();
            if (!z_zero) {
                LogScaled pref =
                    ls_log(double(k) * lz2 - log_double_factorial(2 * k - 1) - za2);
                Pa = pref * (a_zero ? LogScaled::one() : eka.total());
            }
            lhat_[k] = dfac * kappa_[k] + two_d * (Qz - Pa);
        }
        if (k == kmax) break;
        // extend the S sums with l = k, then add kernel term m = k
        if (k == 0) {
            Sz.add(LogScaled::one());
            Sa.add(LogScaled::one());
        } else {
            if (!z_zero) Sz.add(ls_log(double(k) * lz2 - log_double_factorial(2 * k)));
            if (!a_zero) Sa.add(ls_log(cplx(k * la2 - log_double_factorial(2 * k), 0.0)));
        }
        LogScaled Az = z_zero ? LogScaled::zero()
                              : ls_log(0.5 * std::log(cplx(2.0)) + std::log(z) +
                                       double(k) * lz2 - log_double_factorial(2 * k + 1));
        LogScaled Aa = a_zero ? LogScaled::zero()
                              : LogScaled::from_real(a < 0 ? -1.0 : 1.0) *
                                    ls_log(cplx(0.5 * std::log(2.0) +
                                                    std::log(std::abs(a)) + k * la2 -
                                                    log_double_factorial(2 * k + 1),
                                                0.0));
        ker.add(Az * Sa.total() - Aa * Sz.total());
        // e_{2k+1}(2za): add terms j = 2k, 2k+1;  e_k(a^2): add term j = k
        if (!z_zero && !a_zero) {
            e2za.add(ls_log(lterm(l2za, 2 * k)));
            e2za.add(ls_log(lterm(l2za, 2 * k + 1)));
        }
        if (!a_zero)
            eka.add(ls_log(cplx(2.0 * k * std::log(std::abs(a)) - log_factorial(k), 0.0)));
    }
}

LogScaled HatSeries::qhat_odd(int k) const {
    // (2^{k+2} f_k(a^2) (z-a)^2 z^{2k+2} + a (2k+1)!! L_{k+1}) e^{-2za}
    cplx d = z_ - a_;
    LogScaled t1 = LogScaled::zero();
    if (!near_zero(d) && !near_zero(z_))
        t1 = ls_log((k + 2.0) * std::log(cplx(2.0)) + 2.0 * std::log(d) +
                    (2.0 * k + 2.0) * std::log(z_) - 2.0 * z_ * a_) *
             f_poly_scaled(k, a_ * a_);
    LogScaled t2 = LogScaled::from_real(a_) *
                   ls_log(cplx(log_double_factorial(2 * k + 1), 0.0)) * lhat_[k + 1];
    return t1 + t2;
}

LogScaled HatSeries::qhat_even(int k) const {
    cplx d = z_ - a_;
    LogScaled t1 = LogScaled::zero();
    if (a_ != 0.0 && !near_zero(d) && !near_zero(z_))
        t1 = LogScaled::from_real(a_) *
             ls_log((k + 3.0) * std::log(cplx(2.0)) + 2.0 * std::log(d) +
                    (2.0 * k + 2.0) * std::log(z_) - 2.0 * z_ * a_ + a_ * a_) *
             LogScaled::from_real(reg_gamma_q_int(k + 2, a_ * a_).real());
    LogScaled t2 = ls_log(cplx(log_double_factorial(2 * k + 3), 0.0)) * lhat_[k + 2];
    LogScaled t3 = LogScaled::from_real(2.0 * a_ * a_) *
                   ls_log(cplx(log_double_factorial(2 * k + 1), 0.0)) * lhat_[k + 1];
    return t1 + t2 - t3;
}

LogScaled q_hat_scaled(bool odd, int k, cplx z, double a) {
    HatSeries s(k + 2, z, a);
    return odd ? s.qhat_odd(k) : s.qhat_even(k);
}

cplx q_hat_eval(bool odd, int k, cplx z, double a) {
    return q_hat_scaled(odd, k, z, a).value();
}

// ---------------------------------------------------------------------------

cplx pre_kernel_tilde(int N, const HatSeries& sz, const HatSeries& sw, double a) {
    ScaledSum sum;
    for (int k = 0; k < N; ++k) {
        LogScaled den = ls_log(cplx(-log_factorial(2 * k + 2), 0.0)) /
                        (f_poly_scaled(k + 1, a * a) * f_poly_scaled(k, a * a));
        sum.add((sz.qhat_odd(k) * sw.qhat_even(k) - sw.qhat_odd(k) * sz.qhat_even(k)) * den);
    }
    LogScaled out = sum.total() * ls_log(cplx(2.0 * a * a - std::log(8.0), 0.0));
    return out.value();
}

cplx pre_kernel_tilde(int N, cplx z, cplx w, double a) {
    HatSeries sz(N + 2, z, a), sw(N + 2, w, a);
    return pre_kernel_tilde(N, sz, sw, a);
}

namespace {

// Neville extrapolation to 0 of LogScaled values at positive abscissae.
LogScaled neville_to_zero(std::vector<double> x, std::vector<LogScaled> y) {
    int n = int(x.size());
    for (int m = 1; m < n; ++m) {
        for (int i = 0; i + m < n; ++i) {
            double denom = x[i] - x[i + m];
            // p_i = (0 - x[i+m]) p_i^{old} ... standard Neville at t=0
            LogScaled a = LogScaled::from_real(-x[i + m] / denom) * y[i];
            LogScaled b = LogScaled::from_real(x[i] / denom) * y[i + 1];
            y[i] = a + b;
        }
    }
    return y[0];
}

}  // namespace

cplx over_kernel_tilde(int N, cplx z, cplx w, double a) {
    // matched-index Christoffel three-term relation: the N-term overlap kernel
    // comes from the N-term pre kernel and qhat_{2N} (verified by the
    // reproducing-mass test against the christoffel-family sum)
    HatSeries sz(N + 2, z, a), sw(N + 2, w, a);
    cplx base = pre_kernel_tilde(N, sz, sw, a);
    // u -> a limit of kappa-tilde(., u)/qhat_{2N}(u): both vanish like (u-a)^3,
    // so nodes too close to a drown in cancellation noise; the offsets below
    // balance extrapolation error against that noise floor.
    const double eps0 = 0.02 * std::sqrt(1.0 + std::abs(a));
    const double steps[4] = {1.0, 0.75, 0.5, 0.25};
    std::vector<double> xs;
    std::vector<LogScaled> g1, g2;
    for (double s : steps) {
        double eps = eps0 * s;
        double u = a + eps;
        HatSeries su(N + 2, u, a);
        LogScaled qh = su.qhat_even(N);
        g1.push_back(LogScaled::from_value(pre_kernel_tilde(N, sz, su, a)) / qh);
        g2.push_back(LogScaled::from_value(pre_kernel_tilde(N, sw, su, a)) / qh);
        xs.push_back(eps);
    }
    LogScaled G1 = neville_to_zero(xs, g1), G2 = neville_to_zero(xs, g2);
    cplx corr1 = (G1 * sw.qhat_even(N)).value();
    cplx corr2 = (G2 * sz.qhat_even(N)).value();
    return base - corr1 + corr2;
}

// ---------------------------------------------------------------------------

cplx origin_pre_kernel(int N, cplx z, cplx w) {
    return origin_pre_G(N, z, w) - origin_pre_G(N, w, z);
}

cplx origin_over_kernel(int N, cplx z, cplx w) {
    return origin_over_G(N, z, w) - origin_over_G(N, w, z);
}

// ---------------------------------------------------------------------------

namespace {

const SopFamily& cached_pre_family(int N, double a) {
    static std::mutex mtx;
    static std::map<std::pair<int, long long>, SopFamily> cache;
    std::lock_guard<std::mutex> lock(mtx);
    long long key_a;
    std::memcpy(&key_a, &a, sizeof(a));
    auto key = std::make_pair(N, key_a);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, sop_pre_explicit(N, a)).first;
    return it->second;
}

}  // namespace

cplx KernelHandle::value(cplx z, cplx w) const {
    // raw (unrescaled) kernels are exposed for small arguments only; large
    // arguments overflow the unreduced sums and belong to the hat/tilde forms
    if (std::max(std::abs(z), std::abs(w)) > 8.0 &&
        strategy == Strategy::coeff_sum)
        throw std::invalid_argument(
            "KernelHandle: raw kernels are for small arguments; use the tilde form");
    switch (variant) {
        case Variant::gaussian:
            return gaussian_kernel(N, z, w);
        case Variant::origin_pre:
            return origin_pre_kernel(N, z, w);
        case Variant::origin_over:
            return origin_over_kernel(N, z, w);
        case Variant::pre: {
            if (strategy == Strategy::coeff_sum) {
                if (N > 60) throw std::invalid_argument("pre coeff-sum: N <= 60");
                return cached_pre_family(N, a).kernel(N, z, w);
            }
            if (N > 400) throw std::invalid_argument("pre hat-stable: N <= 400");
            cplx pref = std::exp(2.0 * a * a - 2.0 * (z + w) * a) * std::pow(z - a, 3) *
                        std::pow(w - a, 3);
            return pre_kernel_tilde(N, z, w, a) / pref;
        }
        case Variant::over: {
            if (strategy == Strategy::coeff_sum) {
                if (N > 59) throw std::invalid_argument("over coeff-sum: N <= 59");
                const SopFamily& pre = cached_pre_family(N + 1, a);
                SopFamily over = christoffel(pre, a, N);
                return over.kernel(N, z, w);
            }
            if (N > 400) throw std::invalid_argument("over hat-stable: N <= 400");
            // the raw kernel is regular at z = a (simple zero over simple
            // pole); inside the 1e-4 collar the quotient is replaced by a
            // 4-point interpolation of the analytic kernel off the collar
            double collar = 1e-4 * (1.0 + std::abs(a));
            auto assemble = [&](cplx zz, cplx ww) {
                cplx pref = std::exp(2.0 * a * a - 2.0 * (zz + ww) * a) *
                            std::pow(zz - a, 4) * std::pow(ww - a, 4);
                return over_kernel_tilde(N, zz, ww, a) / pref;
            };
            auto near_limit = [&](cplx zz, cplx ww) {  // zz close to a
                if (N <= 59) {  // coefficient path is exactly regular at a
                    const SopFamily& pre = cached_pre_family(N + 1, a);
                    return christoffel(pre, a, N).kernel(N, zz, ww);
                }
                // hat-path values carry an absolute noise floor from the
                // u -> a extrapolation; interpolate from nodes far enough out
                cplx dir = (zz == cplx(a)) ? cplx(1.0) : (zz - a) / std::abs(zz - a);
                double delta = 0.0125 * (1.0 + std::abs(a));
                std::vector<cplx> us, hs;
                for (int i = 1; i <= 4; ++i) {
                    us.push_back(a + dir * (delta * i));
                    hs.push_back(assemble(us.back(), ww));
                }
                cplx h = 0.0;
                for (int i = 0; i < 4; ++i) {
                    cplx li = 1.0;
                    for (int j = 0; j < 4; ++j)
                        if (j != i) li *= (zz - us[j]) / (us[i] - us[j]);
                    h += li * hs[i];
                }
                return h;
            };
            bool znear = std::abs(z - a) < collar, wnear = std::abs(w - a) < collar;
            if (!znear && !wnear) return assemble(z, w);
            if (znear && !wnear) return near_limit(z, w);
            if (!znear && wnear) return -near_limit(w, z);
            throw std::invalid_argument("over kernel: both arguments at the collar");
        }
    }
    return 0.0;
}

cplx KernelHandle::tilde(cplx z, cplx w) const {
    switch (variant) {
        case Variant::pre:
            return pre_kernel_tilde(N, z, w, a);
        case Variant::over:
            return over_kernel_tilde(N, z, w, a);
        default: {
            return value(z, w);
        }
    }
}

// ---------------------------------------------------------------------------

double pfaffian_point_process(const std::function<cplx(cplx, cplx)>& kernel,
                              const std::function<double(cplx)>& weight,
                              const std::vector<cplx>& points) {
    const int k = int(points.size());
    for (cplx z : points)
        if (z.imag() == 0.0) return 0.0;
    CMatrix m = CMatrix::Zero(2 * k, 2 * k);
    for (int i = 0; i < k; ++i) {
        cplx diag = kernel(points[i], std::conj(points[i]));
        m(2 * i, 2 * i + 1) = cplx(0.0, diag.imag());  // purely imaginary by reflection
        for (int j = i + 1; j < k; ++j) {
            cplx kzz = kernel(points[i], points[j]);
            cplx kzc = kernel(points[i], std::conj(points[j]));
            m(2 * i, 2 * j) = kzz;
            m(2 * i, 2 * j + 1) = kzc;
            m(2 * i + 1, 2 * j) = std::conj(kzc);
            m(2 * i + 1, 2 * j + 1) = std::conj(kzz);
        }
    }
    m -= CMatrix(m.transpose());  // lower triangle by antisymmetry
    cplx val = pfaffian(SkewMatrix(m)).to_cplx();
    for (cplx z : points) val *= (std::conj(z) - z) * weight(z);
    if (std::abs(val.imag()) > 1e-9 * std::max(1e-12, std::abs(val)))
        throw std::runtime_error("pfaffian_point_process: non-real value");
    return val.real();
}

double corr(const CorrRequest& req) {
    const int k = int(req.points.size());
    if (k < 1 || k > req.N) throw std::invalid_argument("corr: 1 <= k <= N");
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (req.points[i] == req.points[j])
                throw std::invalid_argument("corr: points must be pairwise distinct");
    if (req.weight == CorrRequest::WeightTag::gaussian) {
        // e^{-|u|^2-|v|^2} kappa(u,v), O(1) inside the droplet; the weight
        // e^{-2|z|^2} is fully absorbed into the entries
        auto kern = [&](cplx u, cplx v) {
            cplx expo = -std::norm(u) - std::norm(v) + 2.0 * u * v;
            return std::exp(expo) * gaussian_kernel_hat(req.N, u, v);
        };
        return pfaffian_point_process(kern, [](cplx) { return 1.0; }, req.points);
    }
    double a = req.a;
    auto kern = [&](cplx u, cplx v) {
        return over_kernel_tilde(req.N, u, v, a) /
               (std::pow(u - a, 4) * std::pow(v - a, 4));
    };
    auto wt = [&](cplx z) {
        double r2 = std::norm(z - a);
        return r2 * (1.0 + r2) * std::exp(-2.0 * r2);
    };
    return pfaffian_point_process(kern, wt, req.points);
}

// ---------------------------------------------------------------------------

double mean_diag_overlap(int N, double a) {
    if (N < 1) throw std::invalid_argument("mean_diag_overlap: N >= 1");
    double deriv = gaussian_kernel_diag_deriv(N, a);
    LogScaled val = partition_ratio(N, a) * LogScaled::from_log(cplx(-2.0 * a * a, 0.0)) /
                    LogScaled::from_real(deriv);
    return val.real_value();
}

double mean_diag_overlap_complex_smallN(int N, cplx x) {
    if (N < 1 || N > 8)
        throw std::invalid_argument("mean_diag_overlap_complex_smallN: 1 <= N <= 8");
    if (x.imag() == 0.0) return 0.0;  // |x - conj x|^2 prefactor
    // Z_{N-1}^{(over)}(x) = (N-1)! Pf(G_{N-1}^{(over)}), Z_N^{(g)} = N! prod r_k^{(g)}
    LogScaled zover = LogScaled::from_real(std::tgamma(double(N)));
    if (N > 1) {
        MomentTable mt(Weight::over(x), /*validate=*/false);
        auto pf = pfaffian(skew_moments(mt, N - 1));
        if (pf.singular) throw std::runtime_error("mean_diag_overlap_complex_smallN: singular");
        zover = zover * pf.value;
    }
    double lzg = log_factorial(N);
    for (int j = 0; j < N; ++j)
        lzg += log_factorial(2 * j + 1) - (2.0 * j + 1.0) * std::log(2.0);
    // (x - xbar) / kappa_N^{(g)}(x, xbar), via the hat kernel:
    // kappa(x, xbar) = e^{2|x|^2} kappa_hat(x, xbar)
    cplx khat = gaussian_kernel_hat(N, x, std::conj(x));
    cplx ratio = (x - std::conj(x)) / khat;  // e^{-2|x|^2} folded below
    LogScaled val = LogScaled::from_real(double(N)) * zover /
                    LogScaled::from_log(cplx(lzg, 0.0)) * LogScaled::from_value(ratio) *
                    LogScaled::from_log(cplx(-2.0 * std::norm(x), 0.0));
    cplx v = val.value();
    if (std::abs(v.imag()) > 1e-8 * std::abs(v))
        throw std::runtime_error("mean_diag_overlap_complex_smallN: non-real value");
    return v.real();
}

}  // namespace ginse
