#include "ginse/montecarlo.hpp"

#include <Eigen/Eigenvalues>
#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace ginse {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    for (auto& si : s_) si = splitmix64(x);
}

std::uint64_t RngStream::next_u64() {
    // xoshiro256++
    std::uint64_t r = rotl(s_[0] + s_[3], 23) + s_[0];
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return r;
}

double RngStream::normal(double sigma) {
    if (have_spare_) {
        have_spare_ = false;
        return sigma * spare_;
    }
    double u, v;
    do {
        u = double(next_u64() >> 11) * 0x1.0p-53;
    } while (u <= 0.0);
    v = double(next_u64() >> 11) * 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u));
    spare_ = r * std::sin(2.0 * kPi * v);
    have_spare_ = true;
    return sigma * r * std::cos(2.0 * kPi * v);
}

CMatrix sample_ginse(int N, RngStream& rng, double s) {
    double sigma = std::sqrt(s);
    CMatrix A(N, N), B(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            A(i, j) = cplx(rng.normal(sigma), rng.normal(sigma));
            B(i, j) = cplx(rng.normal(sigma), rng.normal(sigma));
        }
    CMatrix G(2 * N, 2 * N);
    G.topLeftCorner(N, N) = A;
    G.topRightCorner(N, N) = B;
    G.bottomLeftCorner(N, N) = -B.conjugate();
    G.bottomRightCorner(N, N) = A.conjugate();
    return G;
}

OverlapSample overlaps(const CMatrix& G) {
    const int n = int(G.rows());
    const int N = n / 2;
    Eigen::ComplexEigenSolver<CMatrix> es(G, true);
    if (es.info() != Eigen::Success) throw std::runtime_error("overlaps: eig failed");
    CVector lam = es.eigenvalues();
    double gap_floor = 1e-8 * std::sqrt(double(N));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(lam(i) - lam(j)) < gap_floor)
                throw std::runtime_error("overlaps: near-degenerate spectrum");
    CMatrix V = es.eigenvectors();
    CMatrix W = V.inverse();  // rows are bilinear duals: W V = I

    // conjugate pairing audit (greedy nearest neighbor)
    std::vector<int> unmatched;
    for (int i = 0; i < n; ++i) unmatched.push_back(i);
    double defect = 0.0;
    std::vector<std::pair<int, int>> pairs;
    while (!unmatched.empty()) {
        int i = unmatched.front();
        double best = 1e300;
        size_t argj = 1;
        for (size_t j = 1; j < unmatched.size(); ++j) {
            double dcur = std::abs(lam(i) - std::conj(lam(unmatched[j])));
            if (dcur < best) {
                best = dcur;
                argj = j;
            }
        }
        defect = std::max(defect, best);
        pairs.emplace_back(i, unmatched[argj]);
        unmatched.erase(unmatched.begin() + argj);
        unmatched.erase(unmatched.begin());
    }

    OverlapSample out;
    out.pairing_defect = defect;
    std::vector<double> all_overlaps(n);
    for (int j = 0; j < n; ++j)
        all_overlaps[j] = W.row(j).squaredNorm() * V.col(j).squaredNorm();
    for (auto [i, j] : pairs) {
        int rep = (lam(i).imag() > 0.0) ? i : j;
        out.eigenvalues.push_back(lam(rep));
        out.overlaps.push_back(all_overlaps[rep]);
    }
    // row-sum rule: sum_k (L_j . L_k)(R_j . R_k) over all 2N equals 1,
    // i.e. diag( (W W^dagger)(V^dagger V) ) = 1
    double worst = 0.0;
    CMatrix Lg = W * W.adjoint();
    CMatrix Rg = V.adjoint() * V;
    for (int j = 0; j < n; ++j) {
        cplx tot = 0.0;
        for (int k = 0; k < n; ++k) tot += Lg(j, k) * Rg(k, j);
        worst = std::max(worst, std::abs(tot - 1.0));
    }
    out.sum_rule_defect = worst;
    return out;
}

MCBatch run_batch(int N, int samples, std::uint64_t seed, double s, int threads) {
    MCBatch batch;
    batch.N = N;
    batch.s = s;
    batch.seed = seed;
    batch.samples.resize(samples);
    std::vector<int> rejects(samples, 0);
    if (threads <= 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<int>(threads, samples);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= samples) return;
            for (std::uint64_t attempt = 0;; ++attempt) {
                RngStream rng(seed, std::uint64_t(i) + attempt * std::uint64_t(samples));
                try {
                    CMatrix G = sample_ginse(N, rng, s);
                    batch.samples[i] = overlaps(G);
                    rejects[i] = int(attempt);
                    break;
                } catch (const std::runtime_error&) {
                    continue;  // rejected, advance to a fresh deterministic stream
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (int r : rejects) batch.rejected += r;
    return batch;
}

ConditionalEstimate estimate_conditional(const MCBatch& b, double a, double delta,
                                         double window) {
    if (delta <= 0.0 || window <= 0.0)
        throw std::invalid_argument("estimate_conditional: delta, window > 0");
    const int n = int(b.samples.size());
    std::vector<double> num(n, 0.0), den(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const auto& smp = b.samples[i];
        for (size_t j = 0; j < smp.eigenvalues.size(); ++j) {
            cplx z = smp.eigenvalues[j];
            if (std::abs(z.real() - a) < 0.5 * window && z.imag() > 0.0 &&
                z.imag() < delta) {
                num[i] += smp.overlaps[j];
                den[i] += 1.0;
            }
        }
    }
    double Sn = 0.0, Sd = 0.0;
    for (int i = 0; i < n; ++i) {
        Sn += num[i];
        Sd += den[i];
    }
    ConditionalEstimate est;
    est.delta = delta;
    est.hits = long(Sd);
    if (Sd == 0.0) throw std::runtime_error("estimate_conditional: empty bin");
    est.value = Sn / Sd;
    est.density = Sd / (window * delta * n);
    // jackknife over samples
    double mean = 0.0;
    std::vector<double> loo(n);
    for (int i = 0; i < n; ++i) {
        double dn = Sd - den[i];
        loo[i] = dn > 0.0 ? (Sn - num[i]) / dn : est.value;
        mean += loo[i];
    }
    mean /= n;
    double var = 0.0;
    for (double v : loo) var += (v - mean) * (v - mean);
    est.stderr_jack = std::sqrt(var * double(n - 1) / double(n));
    return est;
}

std::vector<ConditionalEstimate> estimate_conditional_sequence(
    const MCBatch& b, double a, const std::vector<double>& deltas, double window) {
    std::vector<ConditionalEstimate> out;
    for (double d : deltas) out.push_back(estimate_conditional(b, a, d, window));
    return out;
}

Histogram estimate_density(const MCBatch& b, double xmin, double xmax, double ymin,
                           double ymax, int nx, int ny) {
    Histogram h{xmin, xmax, ymin, ymax, nx, ny, {}, 0};
    h.density.assign(size_t(nx) * ny, 0.0);
    for (const auto& smp : b.samples) {
        for (cplx z : smp.eigenvalues) {
            h.total_count += 1;
            if (z.real() < xmin || z.real() >= xmax || z.imag() < ymin || z.imag() >= ymax)
                continue;
            int ix = int((z.real() - xmin) / (xmax - xmin) * nx);
            int iy = int((z.imag() - ymin) / (ymax - ymin) * ny);
            h.density[size_t(iy) * nx + ix] += 1.0;
        }
    }
    // stored eigenvalues are the upper-half representatives and R_{N,1} is
    // conjugation-symmetric with mass N in dA = d^2z/pi: counts/(dx dy) maps
    // to the analytic normalization with a factor pi/2
    double norm = (kPi / 2.0) / (h.bin_area() * double(b.samples.size()));
    for (auto& v : h.density) v *= norm;
    return h;
}

// ---------------------------------------------------------------------------

void save_batch(const MCBatch& b, const std::string& path, bool gzip) {
    std::ostringstream os;
    os << "# ginse mc batch\n";
    os << "# N=" << b.N << " samples=" << b.samples.size() << " seed=" << b.seed
       << " s=" << b.s << " rejected=" << b.rejected << "\n";
    os << "sample re im overlap\n";
    os.precision(17);
    for (size_t i = 0; i < b.samples.size(); ++i) {
        const auto& smp = b.samples[i];
        for (size_t j = 0; j < smp.eigenvalues.size(); ++j) {
            os << i << ' ' << smp.eigenvalues[j].real() << ' '
               << smp.eigenvalues[j].imag() << ' ' << smp.overlaps[j] << "\n";
        }
    }
    std::string data = os.str();
    if (gzip) {
        gzFile f = gzopen(path.c_str(), "wb");
        if (!f) throw std::runtime_error("save_batch: cannot open " + path);
        gzwrite(f, data.data(), unsigned(data.size()));
        gzclose(f);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("save_batch: cannot open " + path);
    f << data;
}

MCBatch load_batch(const std::string& path) {
    std::string data;
    if (path.size() > 3 && path.substr(path.size() - 3) == ".gz") {
        gzFile f = gzopen(path.c_str(), "rb");
        if (!f) throw std::runtime_error("load_batch: cannot open " + path);
        char buf[1 << 16];
        int n;
        while ((n = gzread(f, buf, sizeof(buf))) > 0) data.append(buf, size_t(n));
        gzclose(f);
    } else {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("load_batch: cannot open " + path);
        std::ostringstream ss;
        ss << f.rdbuf();
        data = ss.str();
    }
    MCBatch b;
    std::istringstream is(data);
    std::string line;
    long nsamples = 0;
    while (std::getline(is, line)) {
        if (line.rfind("# N=", 0) == 0) {
            std::istringstream ls(line.substr(2));
            std::string kv;
            while (ls >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) continue;
                std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
                if (k == "N") b.N = std::stoi(v);
                if (k == "samples") nsamples = std::stol(v);
                if (k == "seed") b.seed = std::stoull(v);
                if (k == "s") b.s = std::stod(v);
                if (k == "rejected") b.rejected = std::stoi(v);
            }
        }
        if (!line.empty() && line[0] != '#' && std::isdigit(line[0])) {
            std::istringstream ls(line);
            long i;
            double re, im, ov;
            if (ls >> i >> re >> im >> ov) {
                if (long(b.samples.size()) <= i) b.samples.resize(i + 1);
                b.samples[i].eigenvalues.emplace_back(re, im);
                b.samples[i].overlaps.push_back(ov);
            }
        }
    }
    if (nsamples > 0) b.samples.resize(nsamples);
    return b;
}

}  // namespace ginse
