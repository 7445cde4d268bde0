#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ginse/csv.hpp"
#include "ginse/figures.hpp"

using namespace ginse;
namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* p = std::getenv("GINSE_CLI");
    return p ? p : "";
}

int run(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
}

// file content with '# generated:' lines stripped
std::string stripped(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(bool(f));
    std::ostringstream out;
    std::string line;
    while (std::getline(f, line)) {
        if (line.rfind("# generated:", 0) == 0) continue;
        out << line << "\n";
    }
    return out.str();
}

}  // namespace

TEST_CASE("config file parsing, flag override, grids") {
    std::string p = "/tmp/ginse_cfg_test.cfg";
    {
        std::ofstream f(p);
        f << "# comment line\n";
        f << "n = 5,7\n";
        f << "chi=0.25   # trailing comment\n";
        f << "grid=0:1:0.5\n";
    }
    RunConfig cfg = RunConfig::from_file(p);
    CHECK(cfg.get_int_list("n", "1") == std::vector<int>{5, 7});
    CHECK(cfg.getd("chi", 0.0) == 0.25);
    auto g = cfg.get_grid("grid", "0:1:1");
    REQUIRE(g.size() == 3);
    CHECK(g[1] == 0.5);
    cfg.set("chi", "0.5");  // flags override file
    CHECK(cfg.getd("chi", 0.0) == 0.5);
    std::remove(p.c_str());
}

TEST_CASE("csv round trip and LF endings") {
    CsvTable t;
    t.columns = {"x", "y"};
    t.comments = {"config: n=3"};
    t.rows = {{1.0, 2.5}, {2.0, 0.125}, {0.1 + 0.2, 1e-17}};
    std::string p = "/tmp/ginse_csv_test.csv";
    t.write_file(p);
    {
        std::ifstream f(p, std::ios::binary);
        std::ostringstream ss;
        ss << f.rdbuf();
        std::string data = ss.str();
        CHECK(data.find('\r') == std::string::npos);
        CHECK(data.find("# ginse") != std::string::npos);
    }
    CsvTable r = CsvTable::read_file(p);
    REQUIRE(r.rows.size() == t.rows.size());
    CHECK(r.columns == t.columns);
    for (size_t i = 0; i < t.rows.size(); ++i)
        for (size_t j = 0; j < t.rows[i].size(); ++j)
            CHECK(r.rows[i][j] == t.rows[i][j]);  // %.17g round-trips doubles
    std::remove(p.c_str());
}

TEST_CASE("fig1a values: p=0 column is (2N+1)/(3N), endpoints vanish") {
    RunConfig cfg;
    cfg.set("n", "4,9");
    cfg.set("grid", "-1:1:0.5");
    CsvTable t = fig1('a', cfg);
    REQUIRE(t.columns.size() == 4);
    REQUIRE(t.rows.size() == 5);
    // row at p = 0
    const auto& mid = t.rows[2];
    CHECK(std::abs(mid[0]) < 1e-15);
    CHECK(std::abs(mid[2] - (2.0 * 4 + 1.0) / (3.0 * 4)) < 1e-11);
    CHECK(std::abs(mid[3] - (2.0 * 9 + 1.0) / (3.0 * 9)) < 1e-11);
    CHECK(t.rows.front()[1] == 0.0);  // rho_b(-1)
    CHECK(t.rows.back()[1] == 0.0);
}

TEST_CASE("fig2b densities are nonnegative and vanish on the real axis") {
    RunConfig cfg;
    cfg.set("n", "6");
    cfg.set("grid", "-1:1:0.25");
    CsvTable t = fig2('b', cfg);
    for (const auto& row : t.rows) {
        for (size_t c = 1; c < row.size(); ++c) CHECK(row[c] >= -1e-9);
        if (row[0] == 0.0)
            for (size_t c = 1; c < row.size(); ++c) CHECK(std::abs(row[c]) < 1e-12);
    }
}

TEST_CASE("cli end-to-end: determinism of fig1 and mc reruns") {
    REQUIRE(!cli_path().empty());
    std::string d1 = "/tmp/ginse_cli_run1", d2 = "/tmp/ginse_cli_run2";
    fs::remove_all(d1);
    fs::remove_all(d2);
    REQUIRE(run("fig1 a --n 3,5 --grid -1:1:0.25 --out " + d1) == 0);
    REQUIRE(run("fig1 a --n 3,5 --grid -1:1:0.25 --out " + d2) == 0);
    CHECK(stripped(d1 + "/fig1a.csv") == stripped(d2 + "/fig1a.csv"));

    // rerun from the embedded config reproduces the file bit-for-bit
    CsvTable t = CsvTable::read_file(d1 + "/fig1a.csv");
    std::string cfgpath = "/tmp/ginse_embedded.cfg";
    {
        std::ofstream f(cfgpath);
        for (const auto& c : t.comments)
            if (c.rfind("config: ", 0) == 0) f << c.substr(8) << "\n";
    }
    std::string d3 = "/tmp/ginse_cli_run3";
    fs::remove_all(d3);
    REQUIRE(run("fig1 a --config " + cfgpath + " --out " + d3) == 0);
    CHECK(stripped(d1 + "/fig1a.csv") == stripped(d3 + "/fig1a.csv"));

    // mc determinism
    std::string m1 = "/tmp/ginse_cli_mc1", m2 = "/tmp/ginse_cli_mc2";
    fs::remove_all(m1);
    fs::remove_all(m2);
    REQUIRE(run("mc --n 2 --samples 150 --seed 9 --out " + m1) == 0);
    REQUIRE(run("mc --n 2 --samples 150 --seed 9 --out " + m2) == 0);
    CHECK(stripped(m1 + "/mc_N2_seed9.txt") == stripped(m2 + "/mc_N2_seed9.txt"));
    CHECK(stripped(m1 + "/mc_N2_seed9_compare.csv") ==
          stripped(m2 + "/mc_N2_seed9_compare.csv"));

    // svg emission never changes csv content
    std::string d4 = "/tmp/ginse_cli_run4";
    fs::remove_all(d4);
    REQUIRE(run("fig1 a --n 3,5 --grid -1:1:0.25 --svg --out " + d4) == 0);
    CHECK(stripped(d1 + "/fig1a.csv") == stripped(d4 + "/fig1a.csv"));
    CHECK(fs::exists(d4 + "/fig1a.svg"));
    for (const std::string& d : {d1, d2, d3, d4, m1, m2}) fs::remove_all(d);
    std::remove(cfgpath.c_str());
}

TEST_CASE("cli verify subcommand exit codes") {
    REQUIRE(!cli_path().empty());
    CHECK(run("verify appendix --quick") == 0);
    CHECK(run("verify no-such-suite") != 0);
}
