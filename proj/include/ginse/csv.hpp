#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace ginse {

inline constexpr const char* kToolVersion = "ginse 0.1.0";

// key=value configuration: flags override file entries
class RunConfig {
  public:
    static RunConfig from_file(const std::string& path);
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }
    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    std::string gets(const std::string& key, const std::string& def) const;
    int geti(const std::string& key, int def) const;
    double getd(const std::string& key, double def) const;
    std::vector<int> get_int_list(const std::string& key, const std::string& def) const;
    // "lo:hi:step"
    std::vector<double> get_grid(const std::string& key, const std::string& def) const;

    // deterministic one-per-line echo of the effective configuration
    std::vector<std::string> echo() const;

  private:
    std::map<std::string, std::string> kv_;
};

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> comments;  // emitted as '# ...' header block

    // '#'-prefixed header block (tool version, config echo, timestamp),
    // comma-separated values, LF line endings
    void write(std::ostream& os, bool timestamp = true) const;
    void write_file(const std::string& path, bool timestamp = true) const;
    static CsvTable read_file(const std::string& path);
};

// thin polyline renderer over a CSV table; never affects CSV content
void write_svg_chart(const std::string& path, const CsvTable& t, int x_col,
                     const std::vector<int>& y_cols);

}  // namespace ginse
