#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "ginse/scalar.hpp"

namespace ginse {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Skew-symmetric matrix (M^T = -M), antisymmetrized on construction.
class SkewMatrix {
  public:
    explicit SkewMatrix(const CMatrix& m);
    int dim() const { return int(m_.rows()); }
    const CMatrix& mat() const { return m_; }
    double asymmetry_defect() const { return defect_; }

  private:
    CMatrix m_;
    double defect_;
};

struct PfaffianResult {
    LogScaled value;
    bool singular = false;  // exactly singular leading structure encountered
    cplx to_cplx() const { return value.value(); }
};

// Pfaffian by Parlett-Reid tridiagonalization with partial pivoting,
// sign tracked through row/column swaps.
PfaffianResult pfaffian(const SkewMatrix& m);

// All eigenvalues (balancing + Hessenberg + implicit shifted QR, deflation).
std::vector<cplx> eig_all(const CMatrix& m);

// Right/left eigenvectors for an eigenvalue within ~1e-8 of the spectrum.
// right: M r = lambda r;  left: l^T M = lambda l^T (transpose, not adjoint).
// Normalized so that l^T r = 1; with the conjugated Euclidean pairing
// x.y = x^T conj(y) this is the bi-orthogonality normalization L.R = 1
// for L = conj(l).
struct EigenPair {
    CVector right, left;
};
EigenPair eig_vectors(const CMatrix& m, cplx lambda);

}  // namespace ginse
