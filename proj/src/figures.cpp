#include "ginse/figures.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ginse/asymptotics.hpp"
#include "ginse/diffcheck.hpp"

namespace ginse {

namespace {

// deterministic parallel map over a grid: results land in index order
template <class F>
std::vector<std::vector<double>> parallel_rows(size_t n, int threads, F f) {
    std::vector<std::vector<double>> rows(n);
    if (threads <= 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mtx;
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                rows[i] = f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mtx);
                if (!error) error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return rows;
}

void append_config_comments(CsvTable& t, const std::string& cmd, const RunConfig& cfg) {
    t.comments.push_back("command: " + cmd);
    for (const auto& line : cfg.echo()) t.comments.push_back("config: " + line);
}

}  // namespace

CsvTable fig1(char variant, const RunConfig& cfg) {
    CsvTable t;
    int threads = cfg.geti("threads", 0);
    if (variant == 'a') {
        std::vector<int> Ns = cfg.get_int_list("n", "10,20,30");
        std::vector<double> grid =
            cfg.get_grid("grid", cfg.gets("quick", "") == "1" ? "-1:1:0.05" : "-1:1:0.01");
        t.columns = {"p", "rho_b"};
        for (int N : Ns) t.columns.push_back("D_N" + std::to_string(N));
        t.rows = parallel_rows(grid.size(), threads, [&](size_t i) {
            double p = grid[i];
            std::vector<double> row = {p, rho_bulk(p)};
            for (int N : Ns) {
                double v = mean_diag_overlap(N, std::sqrt(double(N)) * p) / double(N);
                if (!std::isfinite(v))
                    throw std::runtime_error("fig1a: overflow at N=" + std::to_string(N) +
                                             " p=" + std::to_string(p));
                row.push_back(v);
            }
            return row;
        });
    } else if (variant == 'b') {
        std::vector<int> Ns = cfg.get_int_list("n", "30,100,300");
        std::vector<double> grid = cfg.get_grid(
            "grid", cfg.gets("quick", "") == "1" ? "-2.5:1.5:0.1" : "-2.5:1.5:0.02");
        t.columns = {"chi", "rho_e"};
        for (int N : Ns) t.columns.push_back("D_N" + std::to_string(N));
        t.rows = parallel_rows(grid.size(), threads, [&](size_t i) {
            double chi = grid[i];
            std::vector<double> row = {chi, rho_edge(chi)};
            for (int N : Ns) {
                double sq = std::sqrt(double(N));
                double v = mean_diag_overlap(N, sq + chi) / sq;
                if (!std::isfinite(v))
                    throw std::runtime_error("fig1b: overflow at N=" + std::to_string(N) +
                                             " chi=" + std::to_string(chi));
                row.push_back(v);
            }
            return row;
        });
    } else {
        throw std::invalid_argument("fig1: variant must be a or b");
    }
    append_config_comments(t, std::string("fig1 ") + variant, cfg);
    return t;
}

namespace {

double finite_R1_over(int N, double a, cplx z) {
    CorrRequest r{CorrRequest::WeightTag::over, N, a, {z}};
    return corr(r);
}

double limit_R1(bool bulk, double chi, cplx zeta) {
    LimitRegime reg{bulk ? LimitRegime::Kind::bulk : LimitRegime::Kind::edge, 0.0, chi};
    return limit_corr(reg, {zeta});
}

}  // namespace

CsvTable fig2(char variant, const RunConfig& cfg) {
    CsvTable t;
    const bool quick = cfg.gets("quick", "") == "1";
    int threads = cfg.geti("threads", 0);
    const bool bulk = (variant == 'a' || variant == 'b' || variant == 'c');
    const double chi = cfg.getd("chi", bulk ? 0.5 : -1.0);
    const double p = bulk ? cfg.getd("p", 0.0) : 1.0;

    if (variant == 'a' || variant == 'd') {
        // limiting one-point surface R_1^{(over)}(x + i y)
        std::vector<double> gx = cfg.get_grid("grid", quick ? "-3:3:0.4" : "-3:3:0.1");
        std::vector<double> gy = cfg.get_grid("grid-y", quick ? "0:3:0.4" : "0:3:0.1");
        t.columns = {"x", "y", "R1"};
        t.rows = parallel_rows(gx.size() * gy.size(), threads, [&](size_t i) {
            double x = gx[i / gy.size()], y = gy[i % gy.size()];
            return std::vector<double>{x, y, limit_R1(bulk, chi, cplx(x, y))};
        });
    } else {
        // cross sections with finite-N overlays
        double xfix;
        bool section_in_y = true;
        std::vector<int> Ns;
        if (variant == 'b') {
            xfix = cfg.getd("x", 0.5);
            Ns = cfg.get_int_list("n", "10,20,30");
        } else if (variant == 'c') {
            xfix = cfg.getd("x", -2.0);
            Ns = cfg.get_int_list("n", "10,20,30");
        } else if (variant == 'e') {
            xfix = cfg.getd("x", -1.0);
            Ns = cfg.get_int_list("n", "10,40,100");
        } else if (variant == 'f') {
            xfix = cfg.getd("y", 1.0);
            section_in_y = false;
            Ns = cfg.get_int_list("n", "10,40,100");
        } else {
            throw std::invalid_argument("fig2: variant must be a..f");
        }
        std::vector<double> grid = cfg.get_grid(
            "grid", quick ? (section_in_y ? "-3:3:0.5" : "-4:2:0.5")
                          : (section_in_y ? "-3:3:0.05" : "-4:2:0.05"));
        t.columns = {section_in_y ? "y" : "x", "R1_limit"};
        for (int N : Ns) t.columns.push_back("R1_N" + std::to_string(N));
        t.rows = parallel_rows(grid.size(), threads, [&](size_t i) {
            double s = grid[i];
            cplx zeta = section_in_y ? cplx(xfix, s) : cplx(s, xfix);
            std::vector<double> row = {s, limit_R1(bulk, chi, zeta)};
            for (int N : Ns) {
                double sq = std::sqrt(double(N));
                cplx z = sq * p + zeta;
                double a = sq * p + chi;
                row.push_back(finite_R1_over(N, a, z));
            }
            return row;
        });
    }
    append_config_comments(t, std::string("fig2 ") + variant, cfg);
    return t;
}

}  // namespace ginse
