#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace rqd {

// Rectangular table of finite reals written as RFC-4180 CSV behind a
// `# key: value` comment header. Rows holding non-finite values must be
// flagged degenerate, which requires the table to carry a `degenerate`
// column (added automatically on first use).
class OutputTable {
  public:
    explicit OutputTable(std::vector<std::string> columns);

    void set_meta(const std::string& key, const std::string& value);
    void add_row(const std::vector<double>& row, bool degenerate = false);

    // Atomic: writes to a temp file in the same directory, then renames.
    void write(const std::filesystem::path& path) const;

    size_t row_count() const { return rows_.size(); }

  private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
    std::vector<bool> flags_;
    bool any_degenerate_ = false;
    std::map<std::string, std::string> meta_;
};

// Shortest text that parses back to exactly the same double.
std::string format_double(double v);

// FNV-1a over a string; keys output files to the configuration they
// were produced from.
std::string fnv1a_hex(const std::string& data);

} // namespace rqd
