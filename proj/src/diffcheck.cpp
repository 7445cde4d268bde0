#include "ginse/diffcheck.hpp"

#include <map>
#include <mutex>

namespace ginse {

cplx apply_D(const Jet2& f, cplx z, double a) {
    cplx d = z - a;
    return d * f.d2 - (2.0 * d * d + 2.0) * f.d1 - 2.0 * d * f.v;
}

namespace {

Jet2 poly_eval_jet(const Poly& p, const Jet2& z) {
    Jet2 r(cplx(0.0));
    for (int j = p.degree(); j >= 0; --j) r = r * z + p.coeff(j);
    return r;
}

// tilde pre kernel on jets via the coefficient path
Jet2 tilde_pre_jet(const SopFamily& fam, int N, Jet2 z, cplx w, double a) {
    Jet2 sum(cplx(0.0));
    for (int k = 0; k < N; ++k) {
        double rk = fam.norms[k].real_value();
        cplx qe_w = fam.evens[k].eval(w), qo_w = fam.odds[k].eval(w);
        sum = sum + (qe_w / rk) * poly_eval_jet(fam.odds[k], z) -
              (qo_w / rk) * poly_eval_jet(fam.evens[k], z);
    }
    cplx c0 = 2.0 * a * a - 2.0 * w * a;
    Jet2 pref = exp(cplx(-2.0 * a) * z + c0) * pow_int(z - cplx(a), 3) * std::pow(w - a, 3);
    return pref * sum;
}

}  // namespace

double residual_pre_ode(int N, double a, cplx z, cplx w) {
    if (N > 40) throw std::invalid_argument("residual_pre_ode: N <= 40 (jet coeff path)");
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    static std::map<std::pair<int, double>, SopFamily> cache;
    auto it = cache.find({N, a});
    if (it == cache.end()) it = cache.emplace(std::make_pair(N, a), sop_pre_explicit(N, a)).first;
    const SopFamily& fam = it->second;

    Jet2 kt = tilde_pre_jet(fam, N, Jet2::variable(z), w, a);
    cplx lhs = apply_D(kt, z, a);

    cplx d3z = std::pow(z - a, 3), d2w = std::pow(w - a, 2);
    double fN = f_poly(N, a * a).real();
    // I = 4 (z-a)^3 (w-a)^3 e^{2(z-a)(w-a)} Q(2N, 2zw)
    cplx I = 4.0 * d3z * d2w * (w - a) * std::exp(2.0 * (z - a) * (w - a)) *
             reg_gamma_q_int(2 * N, 2.0 * z * w);
    // II = 4a (z-a)^3 (w-a)^2 e^{2a^2-2za-2wa} [ (2zw)^{2N}/(2N)! +
    //      (2N+1-2az) 2^{2N-1} e_N(a^2)(zw)^{2N} / ((2N)! f_N(a^2)) ]
    cplx II = 0.0;
    if (a != 0.0) {
        cplx expo = 2.0 * a * a - 2.0 * z * a - 2.0 * w * a;
        cplx lzw = std::log(z * w);
        cplx part1 = std::exp(expo + 2.0 * N * (std::log(2.0) + lzw) - log_factorial(2 * N));
        cplx part2 = (2.0 * N + 1.0 - 2.0 * a * z) *
                     std::exp(expo + (2.0 * N - 1.0) * std::log(2.0) + 2.0 * N * lzw -
                              log_factorial(2 * N)) *
                     trunc_exp(N, a * a) / fN;
        II = 4.0 * a * d3z * d2w * (part1 + part2);
    }
    // III, IV with the L-hat values at (w, a)
    cplx lh1 = L_hat(N + 1, w, a), lh0 = L_hat(N, w, a);
    cplx zpow = std::exp(2.0 * double(N) * std::log(z) + 2.0 * a * a - 2.0 * z * a -
                         log_factorial(N));
    cplx comb_iii = (2.0 * N + 3.0) * lh1 - 2.0 * a * a * lh0;
    cplx comb_iv = (2.0 * N + 1.0) * lh1 - 2.0 * a * a * lh0;
    cplx III = d3z * (2.0 * N + 1.0) / 2.0 * comb_iii / fN * zpow;
    cplx IV = d3z * z * a * comb_iv / fN * zpow;

    cplx rhs = I - II - III + IV;
    double scale = 1.0 + std::abs(I) + std::abs(II) + std::abs(III) + std::abs(IV);
    return std::abs(lhs - rhs) / scale;
}

double residual_origin_pre(int N, cplx z, cplx w) {
    Jet2 zz = Jet2::variable(z);
    Jet2 khat = origin_pre_G(N, zz, w) - origin_pre_G(N, w, zz);
    khat = pow_int(zz, 3) * std::pow(w, 3) * khat;
    cplx lhs = apply_D(khat, z, 0.0);
    cplx rhs = 4.0 * std::pow(z * w, 3) * trunc_exp(2 * N - 1, 2.0 * z * w);
    // - (1/2) (2N+1)(2N+3)/(2N+2)!! (sqrt2 z)^{2N+3} sum_l (2l+2)(sqrt2 w)^{2l+3}/(2l+3)!!
    cplx s = 0.0;
    cplx t = (2.0 / 3.0) * std::pow(std::sqrt(2.0) * w, 3);
    for (int l = 0; l < N; ++l) {
        s += t;
        t *= 2.0 * w * w * (2.0 * l + 4.0) / ((2.0 * l + 2.0) * (2.0 * l + 5.0));
    }
    cplx pref = std::exp((2.0 * N + 3.0) * std::log(std::sqrt(2.0) * z) -
                         log_double_factorial(2 * N + 2));
    rhs -= 0.5 * (2.0 * N + 1.0) * (2.0 * N + 3.0) * pref * s;
    return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

double residual_origin_over(int N, cplx z, cplx w) {
    if (N > 40) throw std::invalid_argument("residual_origin_over: N <= 40");
    Jet2 zz = Jet2::variable(z);
    Jet2 khat = origin_over_G(N, zz, w) - origin_over_G(N, w, zz);
    khat = pow_int(zz, 4) * std::pow(w, 4) * khat;
    cplx lhs = apply_D(khat, z, 0.0);
    // RHS: (1/2) sum_{k=0}^{2N-1} (2zw)^{k+4}/(k+1)!
    cplx rhs = 0.0;
    {
        cplx t = std::pow(2.0 * z * w, 4);
        for (int k = 0; k < 2 * N; ++k) {
            rhs += 0.5 * t / std::exp(log_factorial(k + 1));
            t *= 2.0 * z * w;
        }
    }
    // - 4 sqrt(pi) (N+1)(N+2)/Gamma(N+5/2) z^{2N+4} sum_l (l+3/2)/(l+2)! w^{2l+4}
    {
        cplx s = 0.0;
        for (int l = 0; l < N; ++l)
            s += (l + 1.5) / std::exp(log_factorial(l + 2)) * std::pow(w, 2 * l + 4);
        rhs -= 4.0 * kSqrtPi * (N + 1.0) * (N + 2.0) *
               std::exp(-std::lgamma(N + 2.5)) * std::pow(z, 2 * N + 4) * s;
    }
    // - 3 sqrt(pi) z^3 sum_k (k+2)/Gamma(k+7/2) w^{2k+5}
    {
        cplx s = 0.0;
        for (int k = 0; k < N; ++k)
            s += (k + 2.0) * std::exp(-std::lgamma(k + 3.5)) * std::pow(w, 2 * k + 5);
        rhs -= 3.0 * kSqrtPi * std::pow(z, 3) * s;
    }
    return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

LimitOdeReport residual_limit_odes(cplx z, cplx w, double chi) {
    LimitOdeReport rep{};
    // origin: D_{z,0} [(zw)^3 kappa_o^{pre}] = 4 (zw)^3 e^{2zw}
    auto E_pre = [](Jet2 zz, cplx ww) {
        Jet2 fz = 2.0 * zz * zz - cplx(1.0);
        cplx fw = 2.0 * ww * ww - 1.0;
        Jet2 t1 = (0.25 * kSqrtPi * fw) * fz * exp(zz * zz + cplx(ww * ww)) *
                  (erf(zz - cplx(ww)) + cplx(erf_cplx(ww)) - erf(zz));
        Jet2 t2 = (-0.5 * fw * std::exp(ww * ww)) * zz;
        Jet2 t3 = (0.5 * ww) * fz * exp(zz * zz);
        Jet2 t4 = (-0.5) * (zz - cplx(ww)) * exp((2.0 * ww) * zz);
        return t1 + t2 + t3 + t4;
    };
    {
        Jet2 khat = E_pre(Jet2::variable(z), w);
        cplx lhs = apply_D(khat, z, 0.0);
        cplx rhs = 4.0 * std::pow(z * w, 3) * std::exp(2.0 * z * w);
        rep.origin = std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
    }
    // bulk: same objects shifted by chi; operator = D_{zeta,chi}/(zeta-chi)
    {
        cplx zeta = z + chi, eta = w + chi;
        Jet2 kt = E_pre(Jet2::variable(zeta) - cplx(chi), eta - chi);
        cplx lhs = apply_D(kt, zeta, chi) / (zeta - chi);
        cplx rhs = 4.0 * std::pow(zeta - chi, 2) * std::pow(eta - chi, 3) *
                   std::exp(2.0 * (zeta - chi) * (eta - chi));
        rep.bulk = std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
    }
    // edge: [d^2 - 2((zeta-chi)^2+1)/(zeta-chi) d - 2] K = F(zeta,eta|chi)/(zeta-chi)
    {
        EdgeBlocks eb(chi);
        cplx zeta = z + chi, eta = w + chi;
        auto g = [&](cplx t) {
            cplx dt = t - chi;
            return -eb.F_reg(t, eta) * std::exp(-dt * dt) / 8.0;
        };
        Segment s1{eta, chi, 2, 14}, s2{eta, zeta, 2, 14};
        cplx I1 = integrate_segment([&](cplx t) { return eb.S2(t) * g(t); }, s1);
        cplx J1 = integrate_segment([&](cplx t) { return eb.S1(t) * g(t); }, s2);
        cplx J2 = integrate_segment([&](cplx t) { return eb.S2(t) * g(t); }, s2);
        cplx c1 = eb.S2(eta), kK, dK, d2K;
        kK = (eb.S1(zeta) * c1 - eb.S1(eta) * eb.S2(zeta)) / c1 * I1 +
             eb.S2(zeta) * J1 - eb.S1(zeta) * J2;
        dK = (eb.S1p(zeta) * c1 - eb.S1(eta) * eb.S2p(zeta)) / c1 * I1 +
             eb.S2p(zeta) * J1 - eb.S1p(zeta) * J2;
        d2K = (eb.S1pp(zeta) * c1 - eb.S1(eta) * eb.S2pp(zeta)) / c1 * I1 +
              eb.S2pp(zeta) * J1 - eb.S1pp(zeta) * J2 + eb.W(zeta) * g(zeta);
        cplx dz = zeta - chi;
        cplx lhs = d2K - 2.0 * (dz * dz + 1.0) / dz * dK - 2.0 * kK;
        cplx rhs = eb.F_reg(zeta, eta) * dz * dz;
        rep.edge = std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
    }
    return rep;
}

}  // namespace ginse
