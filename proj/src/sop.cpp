#include "ginse/sop.hpp"

#include <map>
#include <sstream>

#include "ginse/special.hpp"

namespace ginse {

namespace {

// gaussian monomial moment at scale s: int z^m conj(z)^n e^{-s|z|^2} dA
cplx gaussian_moment(int m, int n, double s) {
    if (m != n || m < 0) return 0.0;
    return std::exp(log_factorial(m) - (m + 1) * std::log(s));
}

// bivariate polynomial in (z, conj z) as (p, q) -> coeff
using Bivar = std::map<std::pair<int, int>, cplx>;

Bivar bivar_mul(const Bivar& a, const Bivar& b) {
    Bivar r;
    for (const auto& [pa, ca] : a)
        for (const auto& [pb, cb] : b)
            r[{pa.first + pb.first, pa.second + pb.second}] += ca * cb;
    return r;
}

Bivar over_poly_part(cplx x) {
    cplx xb = std::conj(x);
    Bivar A{{{1, 1}, 1.0}, {{1, 0}, -x}, {{0, 1}, -xb}, {{0, 0}, x * xb}};
    Bivar B{{{0, 0}, 1.0 + x * xb}, {{1, 1}, 1.0}, {{1, 0}, -xb}, {{0, 1}, -x}};
    return bivar_mul(A, B);
}

}  // namespace

MomentTable::MomentTable(Weight w, bool do_validate) : w_(w) {
    if (w_.tag == Weight::Tag::pre && w_.a.imag() != 0.0)
        throw std::invalid_argument("MomentTable: pre weight requires real a");
    if (w_.tag == Weight::Tag::pre) {
        std::ostringstream os;
        double a = w_.a.real();
        os << "pre diagonal m_{1,1}: oracle " << re(1, 1) << " vs printed "
           << (2.0 * a * a + 4.0) * 0.25 << " (factor 2)";
        note_ = os.str();
    }
    if (do_validate) validate();
}

cplx MomentTable::operator()(int i, int j) const {
    if (i < 0 || j < 0) return 0.0;
    switch (w_.tag) {
        case Weight::Tag::gaussian:
            return gaussian_moment(i, j, 2.0);
        case Weight::Tag::pre: {
            double a = w_.a.real();
            if (i == j)
                return std::exp(log_factorial(j) - (j + 2) * std::log(2.0)) *
                       (2.0 * a * a + j + 3.0);
            if (i == j - 1) return -a * std::exp(log_factorial(j) - (j + 1) * std::log(2.0));
            if (i == j + 1) return -a * std::exp(log_factorial(i) - (i + 1) * std::log(2.0));
            return 0.0;
        }
        case Weight::Tag::sigma_pre: {
            double s = w_.sigma;
            cplx a = w_.a;
            double ls = std::log(s);
            if (i == j)
                return std::exp(log_factorial(i) - (i + 2) * ls) *
                       (s * std::norm(a) + i + 1.0 + s);
            if (j == i + 1)
                return -std::conj(a) * std::exp(log_factorial(i + 1) - (i + 2) * ls);
            if (i == j + 1) return -a * std::exp(log_factorial(i) - (i + 1) * ls);
            return 0.0;
        }
        case Weight::Tag::over: {
            if (std::abs(i - j) > 2) return 0.0;
            cplx sum = 0.0;
            for (const auto& [pq, c] : over_poly_part(w_.a))
                sum += c * gaussian_moment(i + pq.first, j + pq.second, 2.0);
            return sum;
        }
    }
    return 0.0;
}

bool MomentTable::tridiagonal() const { return bandwidth() <= 1; }

int MomentTable::bandwidth() const {
    switch (w_.tag) {
        case Weight::Tag::gaussian: return 0;
        case Weight::Tag::pre:
        case Weight::Tag::sigma_pre: return 1;
        case Weight::Tag::over: return 2;
    }
    return 0;
}

void MomentTable::validate() const {
    const int jmax = 12;
    PlaneRule rule(20, w_.gauss_scale());
    for (int i = 0; i <= jmax; ++i) {
        for (int j = 0; j <= jmax; ++j) {
            cplx want = rule.integrate([&](cplx z) {
                return std::pow(z, i) * std::pow(std::conj(z), j) * w_.poly_part(z);
            });
            cplx got = (*this)(i, j);
            double scale =
                std::sqrt(std::abs(re(i, i)) * std::abs(re(j, j))) + std::abs(want);
            if (std::abs(got - want) > 1e-10 * std::max(scale, 1e-15)) {
                std::ostringstream os;
                os << "MomentTable: oracle mismatch at (" << i << "," << j << "): "
                   << got << " vs " << want;
                throw std::runtime_error(os.str());
            }
        }
    }
}

MomentTable moments(const Weight& w) { return MomentTable(w); }

SkewMatrix skew_moments(const MomentTable& m, int n) {
    CMatrix g = CMatrix::Zero(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i) {
        for (int j = i + 1; j < 2 * n; ++j) {
            // hermitian m: g = 2 Re(m_{i+1,j} - m_{i,j+1})
            cplx v = m(i + 1, j) - m(i, j + 1);
            double re = v.real() + (m(j, i + 1) - m(j + 1, i)).real();
            g(i, j) = re;
            g(j, i) = -re;
        }
    }
    return SkewMatrix(g);
}

std::vector<double> zs_recurrence(const MomentTable& m, int count) {
    if (!m.tridiagonal())
        throw std::invalid_argument("zs_recurrence: tri-diagonal table required");
    std::vector<double> z(count + 1, 0.0);
    if (count >= 1) z[1] = m.re(1, 1);
    for (int j = 1; j < count; ++j) {
        if (z[j] <= 0.0)
            throw std::domain_error("zs_recurrence: non-positive-definite skew structure");
        z[j + 1] =
            m.re(2 * j + 1, 2 * j + 1) - m.re(2 * j - 1, 2 * j) * m.re(2 * j, 2 * j + 1) / z[j];
    }
    z.erase(z.begin());
    for (double v : z)
        if (v <= 0.0)
            throw std::domain_error("zs_recurrence: non-positive-definite skew structure");
    return z;  // z[j-1] holds Z_j
}

std::vector<double> zs_pfaffian(const MomentTable& m, int count) {
    // Z_j = Pf(G_j) / (2 Pf(G_{j-1}))
    std::vector<double> z(count);
    double prev = 1.0;
    for (int j = 1; j <= count; ++j) {
        double pf = pfaffian(skew_moments(m, j)).to_cplx().real();
        z[j - 1] = 0.5 * pf / prev;
        prev = pf;
    }
    return z;
}

SopFamily sop_recurrence(const MomentTable& m, int N) {
    if (!m.tridiagonal())
        throw std::invalid_argument("sop_recurrence: tri-diagonal table required");
    std::vector<double> Z = zs_recurrence(m, N + 1);
    auto mm = [&](int i, int j) { return m.re(i, j); };

    SopFamily fam;
    fam.weight = m.weight();
    fam.provenance = SopFamily::Provenance::recurrence;

    // coefficient back-substitution shared by even/odd families
    auto backfill = [&](std::vector<cplx>& c, int top) {
        // c[top] = 1 set by caller; fills c[top-2 - ...] downward
        for (int j = (top - (top % 2)) / 2; j >= 1; --j) {
            double Zj = Z[j - 1];
            cplx cj1 = (2 * j < int(c.size())) ? c[2 * j] : 0.0;
            cplx cj2 = (2 * j + 1 < int(c.size())) ? c[2 * j + 1] : 0.0;
            c[2 * j - 1] += -mm(2 * j - 1, 2 * j) * cj1 / Zj;
            c[2 * j - 2] += (mm(2 * j, 2 * j + 1) * cj2 + mm(2 * j, 2 * j) * cj1) / Zj;
        }
    };

    for (int k = 0; k < N; ++k) {
        std::vector<cplx> alpha(2 * k + 1, 0.0);
        alpha[2 * k] = 1.0;
        backfill(alpha, 2 * k);
        fam.evens.emplace_back(alpha);

        std::vector<cplx> beta(2 * k + 2, 0.0);
        beta[2 * k + 1] = 1.0;
        backfill(beta, 2 * k + 1);
        fam.odds.emplace_back(beta);

        fam.norms.push_back(LogScaled::from_real(2.0 * Z[k]));  // r_k = Delta_k / Delta_{k-1}
    }
    if (m.weight().tag == Weight::Tag::pre) {
        double a = m.weight().a.real();
        for (int k = 0; k < N; ++k) fam.odds[k] = fam.odds[k] + cplx(a) * fam.evens[k];
    }
    return fam;
}

SopFamily sop_pre_explicit(int N, double a) {
    SopFamily fam;
    fam.weight = Weight::pre(a);
    fam.provenance = SopFamily::Provenance::explicit_formula;
    const double a2 = a * a, w = 2.0 * a2;
    std::vector<double> f(2 * N + 3);
    for (int k = 0; k < int(f.size()); ++k) f[k] = f_poly(k, a2).real();

    for (int k = 0; k < N; ++k) {
        // double-factorial ratios, indexed by l = 0..k:
        //   df13[l] = (2k+3)!!/(2l+3)!!   df11[l] = (2k+1)!!/(2l+1)!!
        //   df15[l] = (2k+3)!!/(2l+5)!!   df13b[l] = (2k+1)!!/(2l+3)!!
        std::vector<double> df13(k + 1), df11(k + 1), df15(k + 1), df13b(k + 1);
        df13[k] = 1.0;
        df11[k] = 1.0;
        df15[k] = 1.0 / (2.0 * k + 5.0);
        df13b[k] = 1.0 / (2.0 * k + 3.0);
        for (int l = k - 1; l >= 0; --l) {
            df13[l] = df13[l + 1] * (2.0 * l + 5.0);
            df11[l] = df11[l + 1] * (2.0 * l + 3.0);
            df15[l] = df15[l + 1] * (2.0 * l + 7.0);
            df13b[l] = df13b[l + 1] * (2.0 * l + 5.0);
        }
        Poly even, odd;
        for (int j = 0; j <= k; ++j) {
            const double scale = std::exp2(double(j - k)) * f[j] / f[k];
            double pw = 1.0;  // w^{l-j}
            double A = 0.0, B = 0.0, Ce = 0.0, Co = 0.0;
            for (int l = j; l <= k; ++l) {
                A += ((l + 1 - j) * df13[l] - (l - j) * df11[l]) * pw;
                if (l <= k - 1)
                    B += ((l + 1 - j) * df15[l] - (l - j) * df13b[l]) * pw;
                Ce += 2.0 * (l + 1 - j) * df13b[l] * pw;
                Co += 2.0 * (l - j) * df13b[l] * pw;
                pw *= w;
            }
            double wkj = std::pow(w, double(k - j));
            even.set_coeff(2 * j, A * scale);
            if (j <= k - 1) even.set_coeff(2 * j + 1, 2.0 * a * B * scale);
            odd.set_coeff(2 * j, a * ((2.0 * j + 1.0) / (2.0 * k + 3.0) * wkj + Ce) * scale);
            odd.set_coeff(2 * j + 1, ((2.0 * j + 3.0) / (2.0 * k + 3.0) * wkj + Co) * scale);
        }
        fam.evens.push_back(even);
        fam.odds.push_back(odd);
        double lr = log_factorial(2 * k + 2) - (2.0 * k + 2.0) * std::log(2.0);
        fam.norms.push_back(LogScaled::from_log(cplx(lr, 0.0)) *
                            LogScaled::from_real(f[k + 1] / f[k]));
    }
    return fam;
}

SopFamily sop_radial(const std::vector<double>& h, const Weight& w) {
    SopFamily fam;
    fam.weight = w;
    fam.provenance = SopFamily::Provenance::radial;
    int N = int((h.size()) / 2);
    for (int k = 0; k < N; ++k) {
        Poly even;
        even.set_coeff(2 * k, 1.0);
        for (int l = 0; l < k; ++l) {
            double prod = 1.0;
            for (int j = 0; j <= k - l - 1; ++j) prod *= h[2 * l + 2 * j + 2] / h[2 * l + 2 * j + 1];
            even.set_coeff(2 * l, prod);
        }
        fam.evens.push_back(even);
        fam.odds.push_back(Poly::monomial(2 * k + 1));
        fam.norms.push_back(LogScaled::from_real(2.0 * h[2 * k + 1]));
    }
    return fam;
}

SopFamily sop_gaussian(int N) {
    std::vector<double> h(2 * N + 1);
    for (int k = 0; k <= 2 * N; ++k) h[k] = std::exp(log_factorial(k) - (k + 1) * std::log(2.0));
    return sop_radial(h, Weight::gaussian());
}

cplx SopFamily::kernel(int N, cplx z, cplx w) const {
    cplx sum = 0.0;
    for (int k = 0; k < N; ++k) {
        cplx term = odds[k].eval(z) * evens[k].eval(w) - evens[k].eval(z) * odds[k].eval(w);
        sum += term / norms[k].real_value();
    }
    return sum;
}

SopFamily christoffel(const SopFamily& pre_fam, double a, int N) {
    if (int(pre_fam.evens.size()) < N + 1)
        throw std::invalid_argument("christoffel: need N+1 even pre polynomials");
    SopFamily fam;
    fam.weight = Weight::over(a);
    fam.provenance = SopFamily::Provenance::christoffel;
    std::vector<double> qa(N + 1);
    for (int k = 0; k <= N; ++k) {
        qa[k] = pre_fam.evens[k].eval(a).real();
        double scale = pre_fam.evens[k].max_abs_coeff() *
                       std::pow(std::max(1.0, std::abs(a)), 2 * k);
        if (std::abs(qa[k]) < 1e-12 * scale)
            throw std::domain_error("christoffel: degenerate conditioning point at k=" +
                                    std::to_string(k));
    }
    // the division remainder equals the numerator value at z = a, which
    // cancels exactly; compare against the pre-cancellation operand scale
    const double apow = std::max(1.0, std::abs(a));
    Poly kernel_accum;  // varkappa_{k+1}^{pre}(a, z) built incrementally over k
    double gross = 0.0;
    for (int k = 0; k < N; ++k) {
        double rk = pre_fam.norms[k].real_value();
        kernel_accum = kernel_accum +
                       (pre_fam.odds[k].eval(a) / rk) * pre_fam.evens[k] +
                       (-qa[k] / rk) * pre_fam.odds[k];
        gross += (std::abs(pre_fam.odds[k].eval(a)) * pre_fam.evens[k].max_abs_coeff() +
                  std::abs(qa[k]) * pre_fam.odds[k].max_abs_coeff()) /
                 rk;
        // even: r_k^{pre} varkappa_{k+1}(a, z) / ((a - z) q_{2k}(a))
        Poly num_even = cplx(rk) * kernel_accum;
        double scale_even = rk * gross * std::pow(apow, 2 * k + 1) * (2 * k + 2);
        auto de = divide_linear(num_even, a);
        if (std::abs(de.remainder) > 1e-12 * std::max(scale_even, 1e-30))
            throw std::runtime_error("christoffel: non-exact division (even)");
        fam.evens.push_back((-1.0 / qa[k]) * de.quotient);

        // odd: (q_{2k+2}(a) q_{2k}(z) - q_{2k}(a) q_{2k+2}(z)) / ((a - z) q_{2k}(a))
        Poly num_odd = cplx(qa[k + 1]) * pre_fam.evens[k] + cplx(-qa[k]) * pre_fam.evens[k + 1];
        double scale_odd = (std::abs(qa[k + 1]) * pre_fam.evens[k].max_abs_coeff() +
                            std::abs(qa[k]) * pre_fam.evens[k + 1].max_abs_coeff()) *
                           std::pow(apow, 2 * k + 2) * (2 * k + 3);
        auto dodd = divide_linear(num_odd, a);
        if (std::abs(dodd.remainder) > 1e-12 * std::max(scale_odd, 1e-30))
            throw std::runtime_error("christoffel: non-exact division (odd)");
        fam.odds.push_back((-1.0 / qa[k]) * dodd.quotient);

        fam.norms.push_back(pre_fam.norms[k] * LogScaled::from_real(qa[k + 1] / qa[k]));
    }
    return fam;
}

LogScaled q_pre_even_value_scaled(int n, double a) {
    if (n < 0 || n % 2 != 0)
        throw std::invalid_argument("q_pre_even_value_scaled: even degree required");
    int k = n / 2;
    a = std::abs(a);  // q_{2k}^{(a)}(a) is even in a
    if (a == 0.0) {
        // only alpha_{2k,0} survives: (2k+3)!!/(3 2^k (k+1))
        double lt = log_double_factorial(2 * k + 3) - std::log(3.0) -
                    k * std::log(2.0) - std::log(double(k + 1));
        return LogScaled::from_log(cplx(lt, 0.0));
    }
    const double a2 = a * a, w = 2.0 * a2;
    const double logw = std::log(w), log2 = std::log(2.0), loga = std::log(a);
    LogScaled fk = f_poly_scaled(k, a2);
    ScaledSum sum;
    for (int j = 0; j <= k; ++j) {
        double lcommon = (j - k) * log2 + f_poly_scaled(j, a2).log_mag - fk.log_mag;
        // alpha_{2k,2j} a^{2j}: terms (l+1-j) DF13(l) - (l-j) DF11(l), all > 0 pairwise;
        // DF11/DF13 = (2l+3)/(2k+3)
        double ldf13 = 0.0;  // log (2k+3)!!/(2l+3)!!, starting at l = k
        for (int l = k; l >= j; --l) {
            double factor = (l + 1 - j) - (l - j) * (2.0 * l + 3.0) / (2.0 * k + 3.0);
            sum.add(LogScaled::from_log(
                cplx(ldf13 + std::log(factor) + (l - j) * logw + lcommon + 2.0 * j * loga, 0.0)));
            ldf13 += std::log(2.0 * l + 3.0);
        }
        // alpha_{2k,2j+1} a^{2j+1}: terms (l+1-j) DF15(l) - (l-j) DF13b(l);
        // DF13b/DF15 = (2l+5)/(2k+3)
        if (j <= k - 1) {
            double ldf15 = 0.0;  // log (2k+3)!!/(2l+5)!! at l = k-1
            for (int l = k - 1; l >= j; --l) {
                double factor = (l + 1 - j) - (l - j) * (2.0 * l + 5.0) / (2.0 * k + 3.0);
                sum.add(LogScaled::from_log(
                    cplx(std::log(2.0) + ldf15 + std::log(factor) + (l - j) * logw + lcommon +
                             (2.0 * j + 2.0) * loga,
                         0.0)));
                ldf15 += std::log(2.0 * l + 5.0);
            }
        }
    }
    return sum.total();
}

LogScaled partition_ratio(int N, double a) {
    if (N < 1) throw std::invalid_argument("partition_ratio: N >= 1");
    double lpre = log_factorial(N) + 2.0 * N * std::log(2.0) - log_factorial(2 * N);
    return LogScaled::from_log(cplx(lpre, 0.0)) * f_poly_scaled(N - 1, a * a) *
           q_pre_even_value_scaled(2 * N - 2, a);
}

PlanarOpFamily planar_op_sigma(int N, double sigma, cplx a) {
    if (sigma <= 0.0) throw std::invalid_argument("planar_op_sigma: sigma > 0");
    PlanarOpFamily fam;
    fam.sigma = sigma;
    fam.a = a;
    double x = sigma * std::norm(a);
    std::vector<double> F(N + 2);
    for (int k = 0; k < int(F.size()); ++k) F[k] = cap_F(k, sigma, x).real();
    for (int k = 0; k <= N; ++k) {
        Poly p;
        for (int j = 0; j <= k; ++j) p.set_coeff(j, std::pow(a, k - j) * F[j] / F[k]);
        fam.p.push_back(p);
        fam.h.push_back(std::exp(log_factorial(k + 1) - (k + 2) * std::log(sigma)) *
                        F[k + 1] / F[k]);
        fam.b.push_back(-a * F[k] / F[k + 1]);
        fam.c.push_back(k >= 1 ? a * F[k - 1] / F[k] : cplx(0.0));
    }
    // residual check of the non-standard three-term recurrence
    for (int k = 1; k + 1 <= N; ++k) {
        Poly lhs = Poly::monomial(1) * fam.p[k];
        Poly rhs = fam.p[k + 1] + fam.b[k] * fam.p[k] +
                   fam.c[k] * (Poly::monomial(1) * fam.p[k - 1]);
        double defect = (lhs - rhs).max_abs_coeff();
        if (defect > 1e-11 * std::max(1.0, lhs.max_abs_coeff()))
            throw std::runtime_error("planar_op_sigma: recurrence residual too large");
    }
    return fam;
}

LduFactors ldu_moments(double sigma, cplx a, int n) {
    if (n > 60) throw std::invalid_argument("ldu_moments: n <= 60");
    double x = sigma * std::norm(a);
    std::vector<double> F(n + 2);
    for (int k = 0; k < int(F.size()); ++k) F[k] = cap_F(k, sigma, x).real();
    LduFactors f;
    f.L = CMatrix::Identity(n, n);
    f.D = CMatrix::Zero(n, n);
    f.U = CMatrix::Identity(n, n);
    for (int p = 0; p < n; ++p) {
        f.D(p, p) = std::exp(log_factorial(p + 1) - (p + 2) * std::log(sigma)) *
                    F[p + 1] / F[p];
        if (p >= 1) {
            f.L(p, p - 1) = -a * F[p - 1] / F[p];
            f.U(p - 1, p) = -std::conj(a) * F[p - 1] / F[p];
        }
    }
    return f;
}

}  // namespace ginse
