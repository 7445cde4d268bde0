#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ginse/sop.hpp"
#include "ginse/special.hpp"
#include "oracles.hpp"

using namespace ginse;
using oracle::rel_gap;

TEST_CASE("moment tables validate against quadrature and match closed forms") {
    MomentTable g(Weight::gaussian());
    CHECK(rel_gap(g(3, 3), std::tgamma(4.0) / 16.0) < 1e-14);
    CHECK(g(2, 3) == cplx(0.0));

    MomentTable pre(Weight::pre(0.8));
    double a = 0.8;
    for (int j : {1, 2, 5}) {
        CHECK(rel_gap(pre(j - 1, j), -a * std::tgamma(j + 1.0) * std::exp2(-j - 1.0)) < 1e-13);
        CHECK(rel_gap(pre(j, j),
                      std::tgamma(j + 1.0) * std::exp2(-j - 2.0) * (2 * a * a + j + 3.0)) < 1e-13);
    }
    CHECK(pre.tridiagonal());
    CHECK(!pre.validation_note().empty());

    MomentTable over(Weight::over(cplx(1.0, 0.5)));
    CHECK(over.bandwidth() == 2);
    MomentTable sig(Weight::sigma_pre(3.5, cplx(1.0, 0.5)));
    CHECK(sig.tridiagonal());
    // hermitian
    CHECK(rel_gap(sig(3, 4), std::conj(sig(4, 3))) < 1e-13);
}

TEST_CASE("pre moments at a=0 reproduce radial norms h_k = k!(k+3)/2^{k+2}") {
    MomentTable pre0(Weight::pre(0.0));
    for (int k = 0; k <= 10; ++k) {
        double want = std::exp(log_factorial(k) - (k + 2) * std::log(2.0)) * (k + 3.0);
        CHECK(rel_gap(pre0(k, k), want) < 1e-13);
    }
}

TEST_CASE("skew moments: antisymmetry and gaussian entries") {
    MomentTable g(Weight::gaussian());
    SkewMatrix G = skew_moments(g, 3);
    CHECK(G.asymmetry_defect() == 0.0);
    // g_{0,1} = 2 m_{1,1} = 1/2
    CHECK(rel_gap(G.mat()(0, 1), 0.5) < 1e-14);
    CHECK(G.mat()(2, 2) == cplx(0.0));

    MomentTable pre0(Weight::pre(0.0));
    SkewMatrix P = skew_moments(pre0, 2);
    // g_{0,1} = 2 h_1^{(pre)}(0) = 1
    CHECK(rel_gap(P.mat()(0, 1), 1.0) < 1e-13);
}

TEST_CASE("Z recursion matches Pfaffian minors and the closed form") {
    for (double a : {0.0, 0.5, 1.5}) {
        MomentTable pre(Weight::pre(a));
        auto zr = zs_recurrence(pre, 6);
        auto zp = zs_pfaffian(pre, 6);
        for (int j = 1; j <= 6; ++j) {
            CHECK(rel_gap(zr[j - 1], zp[j - 1]) < 1e-10);
            // Z_j = (2j)!/2^{2j+1} f_j/f_{j-1}
            double want = std::exp(log_factorial(2 * j) - (2 * j + 1) * std::log(2.0)) *
                          f_poly(j, a * a).real() / f_poly(j - 1, a * a).real();
            CHECK(rel_gap(zr[j - 1], want) < 1e-12);
        }
    }
}

TEST_CASE("recurrence SOPs: gaussian case gives q2 = z^2 + 1, r1 = 3/4") {
    SopFamily fam = sop_recurrence(MomentTable(Weight::gaussian()), 4);
    CHECK(rel_gap(fam.evens[1].coeff(0), 1.0) < 1e-13);
    CHECK(rel_gap(fam.evens[1].coeff(2), 1.0) < 1e-15);
    CHECK(std::abs(fam.evens[1].coeff(1)) < 1e-15);
    CHECK(rel_gap(fam.norm(1), 0.75) < 1e-13);
    CHECK(rel_gap(fam.norm(0), 0.5) < 1e-13);
    // odds are monomials
    CHECK(std::abs(fam.odds[2].coeff(3)) < 1e-13);
    CHECK(rel_gap(fam.odds[2].coeff(5), 1.0) < 1e-15);
}

TEST_CASE("explicit pre SOPs: printed examples") {
    for (double a : {0.0, 0.7, 1.5}) {
        SopFamily fam = sop_pre_explicit(3, a);
        // q_1 = z + a
        CHECK(rel_gap(fam.odds[0].coeff(1), 1.0) < 1e-14);
        CHECK(std::abs(fam.odds[0].coeff(0) - a) < 1e-14);
        // q_2 = z^2 + a z/(2+a^2) + (5+2a^2)/(2(2+a^2))
        double d = 2.0 + a * a;
        CHECK(std::abs(fam.evens[1].coeff(1) - a / d) < 1e-13);
        CHECK(std::abs(fam.evens[1].coeff(0) - (5.0 + 2.0 * a * a) / (2.0 * d)) < 1e-13);
        // r_0 = (2+a^2)/2
        CHECK(rel_gap(fam.norm(0), d / 2.0) < 1e-13);
    }
    // a=0 norms: (k+2)(2k+1)!/2^{2k+1}
    SopFamily f0 = sop_pre_explicit(6, 0.0);
    for (int k = 0; k < 6; ++k) {
        double want =
            (k + 2.0) * std::exp(log_factorial(2 * k + 1) - (2 * k + 1) * std::log(2.0));
        CHECK(rel_gap(f0.norm(k), want) < 1e-13);
    }
}

TEST_CASE("constructor equivalence: recurrence vs explicit, k <= 12") {
    for (double a : {0.0, 0.5, 1.5, 3.0}) {
        SopFamily rec = sop_recurrence(MomentTable(Weight::pre(a)), 13);
        SopFamily exp = sop_pre_explicit(13, a);
        for (int k = 0; k <= 12; ++k) {
            for (int j = 0; j <= 2 * k + 1; ++j) {
                double scale = std::max({1.0, std::abs(exp.evens[k].coeff(j)),
                                         std::abs(exp.odds[k].coeff(j))});
                CHECK(std::abs(rec.evens[k].coeff(j) - exp.evens[k].coeff(j)) < 1e-11 * scale);
                CHECK(std::abs(rec.odds[k].coeff(j) - exp.odds[k].coeff(j)) < 1e-11 * scale);
            }
            CHECK(rel_gap(rec.norm(k), exp.norm(k)) < 1e-11);
        }
    }
}

TEST_CASE("full skew-orthogonality by quadrature (pre family)") {
    for (double a : {0.0, 1.2}) {
        SopFamily fam = sop_pre_explicit(6, a);
        Weight w = Weight::pre(a);
        double rmax = fam.norm(5);
        for (int k = 0; k <= 5; ++k) {
            for (int l = 0; l <= 5; ++l) {
                cplx ee = skew_product(fam.evens[k], fam.evens[l], w);
                cplx oo = skew_product(fam.odds[k], fam.odds[l], w);
                cplx eo = skew_product(fam.evens[k], fam.odds[l], w);
                CHECK(std::abs(ee) < 1e-10 * rmax);
                CHECK(std::abs(oo) < 1e-10 * rmax);
                if (k == l)
                    CHECK(rel_gap(eo, fam.norm(k)) < 1e-10);
                else
                    CHECK(std::abs(eo) < 1e-10 * rmax);
            }
        }
    }
}

TEST_CASE("odd-shift invariance of skew products") {
    SopFamily fam = sop_pre_explicit(4, 0.9);
    Weight w = Weight::pre(0.9);
    auto g = oracle::rng(31);
    for (int k = 0; k < 3; ++k) {
        cplx c = oracle::random_cplx(g, 2.0);
        Poly shifted = fam.odds[k] + c * fam.evens[k];
        CHECK(rel_gap(skew_product(fam.evens[k], shifted, w),
                      skew_product(fam.evens[k], fam.odds[k], w)) < 1e-11);
    }
}

TEST_CASE("radial SOPs: gaussian closed form") {
    SopFamily fam = sop_gaussian(5);
    for (int k = 0; k < 5; ++k) {
        double want = std::exp(log_factorial(2 * k + 1) - (2 * k + 1) * std::log(2.0));
        CHECK(rel_gap(fam.norm(k), want) < 1e-13);
        // q_{2k} = sum_l k!/l! z^{2l}
        for (int l = 0; l <= k; ++l) {
            double c = std::exp(log_factorial(k) - log_factorial(l));
            CHECK(rel_gap(fam.evens[k].coeff(2 * l), c) < 1e-12);
        }
    }
    // evens at k=1: z^2 + h_2/h_1
    std::vector<double> h = {1.0, 0.5, 0.375, 0.1};
    SopFamily f2 = sop_radial(h, Weight::gaussian());
    CHECK(rel_gap(f2.evens[1].coeff(0), h[2] / h[1]) < 1e-14);
}

TEST_CASE("christoffel transform: overlap family is skew-orthogonal") {
    double a = 0.9;
    SopFamily pre = sop_pre_explicit(8, a);
    SopFamily over = christoffel(pre, a, 7);
    Weight w = Weight::over(a);
    // monic, exact division, degrees
    for (int k = 0; k < 7; ++k) {
        CHECK(rel_gap(over.evens[k].coeff(2 * k), 1.0) < 1e-11);
        CHECK(rel_gap(over.odds[k].coeff(2 * k + 1), 1.0) < 1e-11);
    }
    double rmax = over.norm(6);
    for (int k = 0; k <= 6; ++k) {
        for (int l = 0; l <= 6; ++l) {
            cplx eo = skew_product(over.evens[k], over.odds[l], w);
            if (k == l)
                CHECK(rel_gap(eo, over.norm(k)) < 1e-10);
            else
                CHECK(std::abs(eo) < 1e-10 * rmax);
            CHECK(std::abs(skew_product(over.evens[k], over.evens[l], w)) < 1e-10 * rmax);
            CHECK(std::abs(skew_product(over.odds[k], over.odds[l], w)) < 1e-10 * rmax);
        }
    }
}

TEST_CASE("christoffel at a=0 equals radial overlap family") {
    // omega^(over)|_{x=0} = |z|^2 (1+|z|^2) e^{-2|z|^2}: h_k from quadrature
    PlaneRule rule(32, 2.0);
    std::vector<double> h(15);
    for (int k = 0; k < 15; ++k) {
        h[k] = rule.integrate([&](cplx z) {
                       double n = std::norm(z);
                       return cplx(std::pow(n, k) * n * (1.0 + n));
                   }).real();
    }
    SopFamily radial = sop_radial(h, Weight::over(0.0));
    SopFamily pre = sop_pre_explicit(8, 0.0);
    SopFamily over = christoffel(pre, 0.0, 7);
    for (int k = 0; k < 7; ++k) {
        CHECK(rel_gap(over.norm(k), radial.norm(k)) < 1e-11);
        for (int j = 0; j <= 2 * k + 1; ++j) {
            CHECK(std::abs(over.evens[k].coeff(j) - radial.evens[k].coeff(j)) <
                  1e-11 * std::max(1.0, radial.evens[k].max_abs_coeff()));
            CHECK(std::abs(over.odds[k].coeff(j) - radial.odds[k].coeff(j)) <
                  1e-11 * std::max(1.0, radial.odds[k].max_abs_coeff()));
        }
    }
    // r_0^(over)(0) = 5/4 = 2 h_1
    CHECK(rel_gap(over.norm(0), 1.25) < 1e-11);
}

TEST_CASE("scaled evaluation of q_{2k}^{(pre)}(a)") {
    for (double a : {0.0, 0.4, 1.1, 2.7}) {
        SopFamily fam = sop_pre_explicit(13, a);
        for (int k : {0, 1, 4, 9, 12}) {
            double want = fam.evens[k].eval(a).real();
            CHECK(rel_gap(q_pre_even_value_scaled(2 * k, a).value(), want) < 1e-11);
        }
    }
    // stays finite far beyond double range of raw coefficients
    LogScaled big = q_pre_even_value_scaled(598, std::sqrt(300.0));
    CHECK(std::isfinite(big.log_mag));
    CHECK(big.phase.real() > 0.0);
}

TEST_CASE("partition ratio") {
    // a = 0: (2/3)(2N+1)
    for (int N : {1, 2, 5, 20, 100}) {
        CHECK(rel_gap(partition_ratio(N, 0.0).value(), (2.0 / 3.0) * (2 * N + 1)) < 1e-11);
    }
    // N = 1, any a: 1/r_0^(g) = 2
    for (double a : {0.0, 0.8, 2.5}) {
        CHECK(rel_gap(partition_ratio(1, a).value(), 2.0) < 1e-12);
    }
    // direct product cross-check at small N: prod r^(over) / prod r^(g) style
    for (double a : {0.6, 1.4}) {
        int N = 5;
        SopFamily pre = sop_pre_explicit(N + 1, a);
        SopFamily over = christoffel(pre, a, N - 1);
        // N Z_{N-1}^(over)/Z_N^(g) = N (N-1)! prod r^(over) / (N! prod r^(g))
        LogScaled num = LogScaled::one();
        for (int k = 0; k < N - 1; ++k) num = num * over.norms[k];
        SopFamily g = sop_gaussian(N);
        LogScaled den = LogScaled::one();
        for (int k = 0; k < N; ++k) den = den * g.norms[k];
        CHECK(rel_gap(partition_ratio(N, a).value(), (num / den).value()) < 1e-10);
    }
    // overflow audit: finite log for N = 400, a = sqrt(N)
    CHECK(std::isfinite(partition_ratio(400, 20.0).log_mag));
}

TEST_CASE("planar sigma-family OPs: norms, orthogonality, recurrence") {
    // sigma=2, a=0: h_k = k!(k+3)/2^{k+2}
    PlanarOpFamily f0 = planar_op_sigma(8, 2.0, 0.0);
    for (int k = 0; k <= 8; ++k) {
        double want = std::exp(log_factorial(k) - (k + 2) * std::log(2.0)) * (k + 3.0);
        CHECK(rel_gap(f0.h[k], want) < 1e-13);
    }
    // sigma=1: coefficients f_j(|a|^2)/f_k(|a|^2)
    cplx a1(0.8, -0.3);
    PlanarOpFamily f1 = planar_op_sigma(6, 1.0, a1);
    for (int k = 0; k <= 6; ++k)
        for (int j = 0; j <= k; ++j) {
            cplx want = std::pow(a1, k - j) * f_poly(j, std::norm(a1)).real() /
                        f_poly(k, std::norm(a1)).real();
            CHECK(std::abs(f1.p[k].coeff(j) - want) < 1e-12 * std::max(1.0, std::abs(want)));
        }
    // orthogonality under the weight by quadrature
    for (auto [sig, aa] : std::vector<std::pair<double, cplx>>{
             {2.0, cplx(1.0, 0.0)}, {3.5, cplx(1.0, 0.5)}, {1.0, cplx(0.0, 0.0)}}) {
        PlanarOpFamily fam = planar_op_sigma(6, sig, aa);
        PlaneRule rule(28, sig);
        for (int k = 0; k <= 5; ++k)
            for (int l = 0; l <= 5; ++l) {
                cplx ip = rule.integrate([&](cplx z) {
                    cplx d = z - aa;
                    return fam.p[k].eval(z) * std::conj(fam.p[l].eval(z)) *
                           (1.0 + std::norm(d));
                });
                if (k == l)
                    CHECK(rel_gap(ip, fam.h[k]) < 1e-10);
                else
                    CHECK(std::abs(ip) < 1e-10 * std::max(1.0, fam.h[std::max(k, l)]));
            }
    }
}

TEST_CASE("LDU factors reproduce the sigma-family moment matrix") {
    for (auto [sig, aa] : std::vector<std::pair<double, cplx>>{
             {2.0, cplx(1.0, 0.5)}, {1.0, cplx(0.5, 0.0)}, {3.5, cplx(0.3, -0.9)}}) {
        int n = 20;
        auto f = ldu_moments(sig, aa, n);
        CMatrix prod = f.L * f.D * f.U;
        MomentTable mt(Weight::sigma_pre(sig, aa));
        double scale = 0.0;
        for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(mt(i, i)));
        double defect = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) defect = std::max(defect, std::abs(prod(i, j) - mt(i, j)));
        CHECK(defect < 1e-11 * scale);
        // D_{p,p} = (p+1)!/sigma^{p+2} F_{p+1}/F_p
        double x = sig * std::norm(aa);
        for (int p = 0; p < n; ++p) {
            double want = std::exp(log_factorial(p + 1) - (p + 2) * std::log(sig)) *
                          cap_F(p + 1, sig, x).real() / cap_F(p, sig, x).real();
            CHECK(rel_gap(f.D(p, p), want) < 1e-12);
        }
    }
    // r_p = p!/Gamma(sigma+1) F_{p,sigma}(x) solves r_{p+1} + x p r_{p-1} = (x+p+1+sigma) r_p
    for (double sig : {1.0, 2.0, 3.5}) {
        double x = 1.7;
        auto r = [&](int p) {
            return std::exp(log_factorial(p) - std::lgamma(sig + 1.0)) *
                   cap_F(p, sig, x).real();
        };
        for (int p = 1; p <= 40; ++p) {
            double lhs = r(p + 1) + x * p * r(p - 1);
            double rhs = (x + p + 1 + sig) * r(p);
            CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
        }
    }
}

TEST_CASE("error paths: non-tridiagonal tables, bad weights") {
    MomentTable over(Weight::over(cplx(0.5, 0.2)));
    CHECK_THROWS_AS(zs_recurrence(over, 4), std::invalid_argument);
    CHECK_THROWS_AS(sop_recurrence(over, 4), std::invalid_argument);
    CHECK_NOTHROW([] { MomentTable ok(Weight::pre(1.0), true); }());
    // pre weight demands real a
    Weight w = Weight::pre(0.0);
    w.a = cplx(1.0, 0.5);
    CHECK_THROWS_AS((MomentTable{w}), std::invalid_argument);
}
