#include "ginse/csv.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ginse {

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("config: cannot open " + path);
    RunConfig cfg;
    std::string line;
    while (std::getline(f, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        if (!k.empty()) cfg.kv_[k] = v;
    }
    return cfg;
}

std::string RunConfig::gets(const std::string& key, const std::string& def) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? def : it->second;
}
int RunConfig::geti(const std::string& key, int def) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? def : std::stoi(it->second);
}
double RunConfig::getd(const std::string& key, double def) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? def : std::stod(it->second);
}
std::vector<int> RunConfig::get_int_list(const std::string& key,
                                         const std::string& def) const {
    std::string s = gets(key, def);
    std::vector<int> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoi(tok));
    }
    return out;
}
std::vector<double> RunConfig::get_grid(const std::string& key,
                                        const std::string& def) const {
    std::string s = gets(key, def);
    double lo, hi, step;
    if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0)
        throw std::runtime_error("config: bad grid spec '" + s + "' (want lo:hi:step)");
    std::vector<double> g;
    long n = std::lround((hi - lo) / step);
    for (long i = 0; i <= n; ++i) g.push_back(lo + step * double(i));
    return g;
}

std::vector<std::string> RunConfig::echo() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : kv_) out.push_back(k + "=" + v);
    return out;
}

void CsvTable::write(std::ostream& os, bool timestamp) const {
    os << "# " << kToolVersion << "\n";
    if (timestamp) {
        auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[64];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        os << "# generated: " << buf << "\n";
    }
    for (const auto& c : comments) os << "# " << c << "\n";
    for (size_t j = 0; j < columns.size(); ++j)
        os << columns[j] << (j + 1 < columns.size() ? "," : "\n");
    char buf[40];
    for (const auto& row : rows) {
        for (size_t j = 0; j < row.size(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", row[j]);
            os << buf << (j + 1 < row.size() ? "," : "\n");
        }
    }
}

void CsvTable::write_file(const std::string& path, bool timestamp) const {
    std::ofstream f(path, std::ios::binary);  // binary: LF endings everywhere
    if (!f) throw std::runtime_error("csv: cannot open " + path);
    write(f, timestamp);
}

CsvTable CsvTable::read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("csv: cannot open " + path);
    CsvTable t;
    std::string line;
    bool have_columns = false;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            t.comments.push_back(line.size() > 2 ? line.substr(2) : "");
            continue;
        }
        std::istringstream is(line);
        std::string tok;
        if (!have_columns) {
            while (std::getline(is, tok, ',')) t.columns.push_back(tok);
            have_columns = true;
            continue;
        }
        std::vector<double> row;
        while (std::getline(is, tok, ',')) row.push_back(std::stod(tok));
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_svg_chart(const std::string& path, const CsvTable& t, int x_col,
                     const std::vector<int>& y_cols) {
    if (t.rows.empty()) throw std::runtime_error("svg: empty table");
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& r : t.rows) {
        xmin = std::min(xmin, r[x_col]);
        xmax = std::max(xmax, r[x_col]);
        for (int c : y_cols) {
            if (!std::isfinite(r[c])) continue;
            ymin = std::min(ymin, r[c]);
            ymax = std::max(ymax, r[c]);
        }
    }
    if (ymax <= ymin) ymax = ymin + 1.0;
    if (xmax <= xmin) xmax = xmin + 1.0;
    const double W = 640, H = 420, m = 50;
    auto X = [&](double x) { return m + (x - xmin) / (xmax - xmin) * (W - 2 * m); };
    auto Y = [&](double y) { return H - m - (y - ymin) / (ymax - ymin) * (H - 2 * m); };
    const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("svg: cannot open " + path);
    f << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
      << "' viewBox='0 0 " << W << " " << H << "'>\n";
    f << "<rect width='100%' height='100%' fill='white'/>\n";
    f << "<line x1='" << m << "' y1='" << H - m << "' x2='" << W - m << "' y2='" << H - m
      << "' stroke='black'/>\n";
    f << "<line x1='" << m << "' y1='" << m << "' x2='" << m << "' y2='" << H - m
      << "' stroke='black'/>\n";
    for (size_t ci = 0; ci < y_cols.size(); ++ci) {
        f << "<polyline fill='none' stroke='" << palette[ci % 5] << "' points='";
        for (const auto& r : t.rows)
            if (std::isfinite(r[y_cols[ci]])) f << X(r[x_col]) << "," << Y(r[y_cols[ci]]) << " ";
        f << "'/>\n";
        f << "<text x='" << W - m + 4 << "' y='" << m + 16 * ci << "' font-size='12' fill='"
          << palette[ci % 5] << "'>" << t.columns[y_cols[ci]] << "</text>\n";
    }
    f << "<text x='" << W / 2 << "' y='" << H - 12 << "' font-size='12' text-anchor='middle'>"
      << t.columns[x_col] << "</text>\n";
    f << "</svg>\n";
}

}  // namespace ginse
