#include "ginse/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace ginse {

SkewMatrix::SkewMatrix(const CMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("SkewMatrix: square required");
    if (m.rows() % 2 != 0) throw std::invalid_argument("SkewMatrix: even dimension required");
    m_ = 0.5 * (m - m.transpose());
    defect_ = (m - m_).cwiseAbs().maxCoeff();
}

PfaffianResult pfaffian(const SkewMatrix& sm) {
    CMatrix a = sm.mat();
    const int n = int(a.rows());
    if (n == 0) return {LogScaled::one(), false};
    const double pivot_tol = 1e-13 * std::max(a.cwiseAbs().maxCoeff(), 1e-300);
    LogScaled pf = LogScaled::one();
    for (int k = 0; k + 1 < n; k += 2) {
        // pivot: largest |a(i, k)| for i > k
        int kp = k + 1;
        double best = std::abs(a(k + 1, k));
        for (int i = k + 2; i < n; ++i) {
            if (std::abs(a(i, k)) > best) {
                best = std::abs(a(i, k));
                kp = i;
            }
        }
        if (best <= pivot_tol) return {LogScaled::zero(), true};
        if (kp != k + 1) {
            a.row(k + 1).swap(a.row(kp));
            a.col(k + 1).swap(a.col(kp));
            pf = -pf;
        }
        pf = pf * LogScaled::from_value(a(k, k + 1));
        if (k + 2 < n) {
            int m = n - (k + 2);
            CVector tau = a.block(k + 2, k, m, 1) / a(k + 1, k);
            CVector col = a.block(k + 2, k + 1, m, 1);
            a.block(k + 2, k + 2, m, m) +=
                tau * col.transpose() - col * tau.transpose();
        }
    }
    return {pf, false};
}

std::vector<cplx> eig_all(const CMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eig_all: square required");
    if (m.rows() > 400) throw std::invalid_argument("eig_all: dim <= 400");
    Eigen::ComplexEigenSolver<CMatrix> es(m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw std::runtime_error("eig_all: QR did not converge");
    std::vector<cplx> out(m.rows());
    for (int i = 0; i < m.rows(); ++i) out[i] = es.eigenvalues()(i);
    return out;
}

namespace {

// deterministic pseudo-random direction mixed into the start vector
uint64_t splitmix64(uint64_t& s) {
    uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CVector inverse_iterate(const CMatrix& shifted, int n) {
    CVector x(n);
    uint64_t s = 0x5eedULL;
    for (int i = 0; i < n; ++i) {
        double u = double(splitmix64(s) >> 11) * 0x1.0p-53;
        double v = double(splitmix64(s) >> 11) * 0x1.0p-53;
        x(i) = cplx(0.3 * (u - 0.5), 0.3 * (v - 0.5));
    }
    x(0) += 1.0;
    x.normalize();
    Eigen::PartialPivLU<CMatrix> lu(shifted);
    for (int it = 0; it < 2; ++it) {
        x = lu.solve(x);
        double nrm = x.norm();
        if (!(nrm > 0.0) || !std::isfinite(nrm))
            throw std::runtime_error("eig_vectors: inverse iteration stagnated");
        x /= nrm;
    }
    return x;
}

}  // namespace

EigenPair eig_vectors(const CMatrix& m, cplx lambda) {
    const int n = int(m.rows());
    // small diagonal regularization keeps the solve well-posed when lambda is
    // (numerically) an exact eigenvalue
    double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
    cplx shift = lambda + cplx(0.0, 0.0);
    CMatrix a = m - shift * CMatrix::Identity(n, n);
    for (int i = 0; i < n; ++i) a(i, i) += 1e-14 * scale;
    EigenPair p;
    p.right = inverse_iterate(a, n);
    p.left = inverse_iterate(a.transpose(), n);
    double res_r = (m * p.right - lambda * p.right).norm() / scale;
    double res_l = (p.left.transpose() * m - lambda * p.left.transpose()).norm() / scale;
    if (res_r > 1e-8 || res_l > 1e-8)
        throw std::runtime_error("eig_vectors: residual too large (defective cluster?)");
    cplx pairing = p.left.transpose() * p.right;
    if (std::abs(pairing) < 1e-14)
        throw std::runtime_error("eig_vectors: left/right pairing degenerate");
    p.left /= pairing;
    return p;
}

}  // namespace ginse
