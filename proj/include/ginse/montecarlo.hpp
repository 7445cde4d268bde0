#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ginse/linalg.hpp"

namespace ginse {

// Deterministic per-stream RNG: identical (seed, stream) reproduces identical
// draws bit-for-bit regardless of thread count.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream);
    double normal(double sigma);  // Box-Muller on top of mt19937_64
    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

  private:
    std::uint64_t seed_, stream_;
    std::uint64_t s_[4];  // xoshiro-style state expanded from (seed, stream)
    bool have_spare_ = false;
    double spare_ = 0.0;
    std::uint64_t next_u64();
};

// quaternionic 2N x 2N Ginibre sample [[A, B], [-conj B, conj A]], entries of
// A, B with independent real/imaginary parts of variance s each
CMatrix sample_ginse(int N, RngStream& rng, double s = 0.25);

struct OverlapSample {
    std::vector<cplx> eigenvalues;  // N upper-half-plane representatives
    std::vector<double> overlaps;   // diagonal overlaps O_jj >= 1
    double pairing_defect = 0.0;    // conjugate-pair matching defect
    double sum_rule_defect = 0.0;   // max_j |sum_k (O_jk + O_j,kbar) - 1|
};

// Eigen-decomposition route: right vectors V, bilinear duals V^{-1};
// O_jj = |l_j|^2 |r_j|^2 with l_j^T r_k = delta. Throws on a near-degenerate
// spectrum (min gap < 1e-8 sqrt(N)).
OverlapSample overlaps(const CMatrix& G);

struct MCBatch {
    int N = 0;
    double s = 0.25;
    std::uint64_t seed = 0;
    std::vector<OverlapSample> samples;
    int rejected = 0;
};

MCBatch run_batch(int N, int samples, std::uint64_t seed, double s = 0.25,
                  int threads = 0);

struct ConditionalEstimate {
    double delta = 0.0;       // strip half-width used
    double value = 0.0;       // overlap-weighted / plain ratio
    double stderr_jack = 0.0; // jackknife standard error over samples
    double density = 0.0;     // plain count / (box area * samples)
    long hits = 0;
};

// conditioning on the real axis: box |Re z - a| < w/2, 0 < Im z < delta
ConditionalEstimate estimate_conditional(const MCBatch& b, double a, double delta,
                                         double window);
std::vector<ConditionalEstimate> estimate_conditional_sequence(
    const MCBatch& b, double a, const std::vector<double>& deltas, double window);

struct Histogram {
    double xmin, xmax, ymin, ymax;
    int nx, ny;
    std::vector<double> density;  // row-major, normalized R_hat_{N,1}
    long total_count = 0;
    double bin_area() const { return (xmax - xmin) / nx * ((ymax - ymin) / ny); }
};
Histogram estimate_density(const MCBatch& b, double xmin, double xmax, double ymin,
                           double ymax, int nx, int ny);

// columnar text persistence: header lines, one row per eigenvalue
// (sample id, Re z, Im z, overlap); optionally gzip-compressed
void save_batch(const MCBatch& b, const std::string& path, bool gzip = false);
MCBatch load_batch(const std::string& path);

}  // namespace ginse
