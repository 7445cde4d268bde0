#pragma once

#include <string>
#include <vector>

#include "ginse/linalg.hpp"
#include "ginse/poly.hpp"
#include "ginse/quad.hpp"

namespace ginse {

// Moment table m_{i,j} = int z^i conj(z)^j omega(z) dA(z), generated from
// closed forms and validated against plane quadrature on construction.
class MomentTable {
  public:
    explicit MomentTable(Weight w, bool validate = true);

    cplx operator()(int i, int j) const;
    double re(int i, int j) const { return (*this)(i, j).real(); }
    bool hermitian() const { return true; }  // all supported weights are real
    bool tridiagonal() const;
    int bandwidth() const;
    const Weight& weight() const { return w_; }

    // oracle-vs-print note for the pre diagonal (factor-2 discrepancy)
    std::string validation_note() const { return note_; }

  private:
    void validate() const;
    Weight w_;
    std::string note_;
};

MomentTable moments(const Weight& w);

// Skew moment matrix G_n = (g_{i,j})_{i,j=0}^{2n-1},
// g_{i,j} = <z^i, z^j>_s, exactly antisymmetric.
SkewMatrix skew_moments(const MomentTable& m, int n);

struct SopFamily {
    enum class Provenance { explicit_formula, recurrence, radial, christoffel };
    Weight weight;
    std::vector<Poly> evens;       // evens[k] monic of degree 2k
    std::vector<Poly> odds;        // odds[k] monic of degree 2k+1
    std::vector<LogScaled> norms;  // r_k > 0
    Provenance provenance = Provenance::recurrence;

    int size() const { return int(norms.size()); }
    double norm(int k) const { return norms[k].real_value(); }
    // kernel sum varkappa_N(z, w), N <= size()
    cplx kernel(int N, cplx z, cplx w) const;
};

// The scalar recursion Z_1 = Re m_{1,1},
// Z_{j+1} = Re m_{2j+1,2j+1} - Re m_{2j-1,2j} Re m_{2j,2j+1} / Z_j;
// equals Pf(G_j)/(2 Pf(G_{j-1})) for tri-diagonal moment tables.
std::vector<double> zs_recurrence(const MomentTable& m, int count);
// Pfaffian-minor route to the same quantities (cross-check, n <= ~10).
std::vector<double> zs_pfaffian(const MomentTable& m, int count);

// Monic SOPs from the backward coefficient recurrences; for the pre weight
// the odd family is shifted q_{2k+1} -> q_{2k+1} + a q_{2k}.
SopFamily sop_recurrence(const MomentTable& m, int N);

// Explicit pre-overlap SOPs (real a) by the printed coefficient formulas.
SopFamily sop_pre_explicit(int N, double a);

// Radially symmetric weight with squared OP norms h_k.
SopFamily sop_radial(const std::vector<double>& h, const Weight& w);
SopFamily sop_gaussian(int N);

// Christoffel transform pre -> over at real a. Requires fam to hold at least
// N+1 even polynomials. Throws std::domain_error when q_{2k}^{pre}(a) ~ 0.
SopFamily christoffel(const SopFamily& pre_fam, double a, int N);

// q_n^{(pre)}(a) for even n at the family's own real parameter a, evaluated
// as a log-scaled sum of positive terms (no cancellation for any a, k).
LogScaled q_pre_even_value_scaled(int n, double a);

// N Z_{N-1}^{(over)}(a) / Z_N^{(g)} = N! 2^{2N}/(2N)! f_{N-1}(a^2) q_{2N-2}^{(pre)}(a)
LogScaled partition_ratio(int N, double a);

// Planar (non-skew) OPs for the sigma-family weight.
struct PlanarOpFamily {
    double sigma;
    cplx a;
    std::vector<Poly> p;       // monic, p[k] degree k
    std::vector<double> h;     // squared norms
    std::vector<cplx> b, c;    // recurrence z p_k = p_{k+1} + b_k p_k + z c_k p_{k-1}
};
PlanarOpFamily planar_op_sigma(int N, double sigma, cplx a);

struct LduFactors {
    CMatrix L, D, U;
};
// LDU factors of the sigma-family moment matrix (n x n).
LduFactors ldu_moments(double sigma, cplx a, int n);

}  // namespace ginse
