#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "ginse/figures.hpp"
#include "ginse/kernels.hpp"
#include "ginse/montecarlo.hpp"
#include "ginse/verify.hpp"

namespace fs = std::filesystem;
using namespace ginse;

namespace {

struct CommonOpts {
    std::string n_list, grid, out = ".", config_file;
    double p = std::nan(""), chi = std::nan("");
    long samples = -1;
    long seed = -1;
    bool svg = false, quick = false;
    int threads = 0;

    RunConfig build() const {
        RunConfig cfg;
        if (!config_file.empty()) cfg = RunConfig::from_file(config_file);
        // flags override the file
        if (!n_list.empty()) cfg.set("n", n_list);
        if (!grid.empty()) cfg.set("grid", grid);
        if (!std::isnan(p)) cfg.set("p", std::to_string(p));
        if (!std::isnan(chi)) cfg.set("chi", std::to_string(chi));
        if (samples >= 0) cfg.set("samples", std::to_string(samples));
        if (seed >= 0) cfg.set("seed", std::to_string(seed));
        if (quick) cfg.set("quick", "1");
        if (threads > 0) cfg.set("threads", std::to_string(threads));
        return cfg;
    }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--n", o.n_list, "comma-separated N list");
    cmd->add_option("--p", o.p, "bulk position");
    cmd->add_option("--chi", o.chi, "edge/bulk offset");
    cmd->add_option("--grid", o.grid, "grid spec lo:hi:step");
    cmd->add_option("--samples", o.samples, "Monte Carlo sample count");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--config", o.config_file, "key=value config file");
    cmd->add_option("--threads", o.threads, "worker threads (0: hardware)");
    cmd->add_flag("--svg", o.svg, "also emit an SVG rendering");
    cmd->add_flag("--quick", o.quick, "reduced grids and sample counts");
}

void emit(const CsvTable& t, const std::string& out_dir, const std::string& stem,
          bool svg) {
    fs::create_directories(out_dir);
    std::string csv_path = (fs::path(out_dir) / (stem + ".csv")).string();
    t.write_file(csv_path);
    std::cout << "wrote " << csv_path << "\n";
    if (svg && t.columns.size() >= 2) {
        std::vector<int> ycols;
        for (size_t c = 1; c < t.columns.size(); ++c) ycols.push_back(int(c));
        std::string svg_path = (fs::path(out_dir) / (stem + ".svg")).string();
        write_svg_chart(svg_path, t, 0, ycols);
        std::cout << "wrote " << svg_path << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"eigenvector-overlap statistics of the symplectic Ginibre ensemble"};
    app.require_subcommand(1);

    CommonOpts o1, o2, ov, om;
    std::string variant1 = "a", variant2 = "a", suite = "all";

    auto* f1 = app.add_subcommand("fig1", "mean diagonal overlap profiles (bulk/edge)");
    f1->add_option("variant", variant1, "a (bulk) or b (edge)")->required();
    add_common(f1, o1);

    auto* f2 = app.add_subcommand("fig2", "overlap-weight one-point functions");
    f2->add_option("variant", variant2, "a..f")->required();
    add_common(f2, o2);

    auto* fv = app.add_subcommand("verify", "run a verification suite");
    fv->add_option("suite", suite, "sops|kernels|ode|asymptotics|appendix|mc|all")
        ->required();
    add_common(fv, ov);

    auto* fm = app.add_subcommand("mc", "Monte Carlo batch + analytic comparison");
    add_common(fm, om);

    CLI11_PARSE(app, argc, argv);

    try {
        if (f1->parsed()) {
            RunConfig cfg = o1.build();
            CsvTable t = fig1(variant1[0], cfg);
            emit(t, o1.out, std::string("fig1") + variant1[0], o1.svg);
        } else if (f2->parsed()) {
            RunConfig cfg = o2.build();
            CsvTable t = fig2(variant2[0], cfg);
            emit(t, o2.out, std::string("fig2") + variant2[0], o2.svg);
        } else if (fv->parsed()) {
            RunConfig cfg = ov.build();
            VerifyReport rep = verify_suite(suite, cfg.gets("quick", "") == "1");
            write_report(std::cout, rep);
            if (!ov.out.empty() && ov.out != ".") {
                fs::create_directories(ov.out);
                std::ofstream f(fs::path(ov.out) / ("verify_" + suite + ".txt"));
                write_report(f, rep);
            }
            return rep.all_pass() ? 0 : 1;
        } else if (fm->parsed()) {
            RunConfig cfg = om.build();
            int N = cfg.get_int_list("n", "5").at(0);
            long samples = cfg.geti("samples", cfg.gets("quick", "") == "1" ? 2000 : 50000);
            if (samples < 100) throw std::runtime_error("mc: need at least 100 samples");
            std::uint64_t seed = std::uint64_t(cfg.geti("seed", 1));
            MCBatch b = run_batch(N, int(samples), seed, cfg.getd("s", 0.25),
                                  cfg.geti("threads", 0));
            fs::create_directories(om.out);
            std::string stem = "mc_N" + std::to_string(N) + "_seed" + std::to_string(seed);
            bool gz = cfg.gets("gz", "") == "1";
            std::string batch_path =
                (fs::path(om.out) / (stem + (gz ? ".txt.gz" : ".txt"))).string();
            save_batch(b, batch_path, gz);
            std::cout << "wrote " << batch_path << " (rejected " << b.rejected << ")\n";
            // analytic-vs-MC comparison table over a few conditioning points
            CsvTable t;
            t.columns = {"a", "delta", "estimate", "stderr_jack", "analytic", "hits"};
            for (double a : {0.0, 0.5 * std::sqrt(double(N))}) {
                double want = mean_diag_overlap(N, a);
                for (double delta : {0.3, 0.2, 0.1}) {
                    try {
                        auto est = estimate_conditional(b, a, delta, 0.8);
                        t.rows.push_back({a, est.delta, est.value, est.stderr_jack, want,
                                          double(est.hits)});
                    } catch (const std::runtime_error&) {
                        t.comments.push_back("empty bin: a=" + std::to_string(a) +
                                             " delta=" + std::to_string(delta));
                    }
                }
            }
            t.comments.push_back("command: mc");
            for (const auto& line : cfg.echo()) t.comments.push_back("config: " + line);
            t.comments.push_back("batch: " + (stem + (gz ? ".txt.gz" : ".txt")));
            emit(t, om.out, stem + "_compare", om.svg);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
