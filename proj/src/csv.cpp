#include "rqd/csv.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rqd {

OutputTable::OutputTable(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty())
        throw std::invalid_argument("OutputTable: need at least one column");
}

void OutputTable::set_meta(const std::string& key, const std::string& value) {
    meta_[key] = value;
}

void OutputTable::add_row(const std::vector<double>& row, bool degenerate) {
    if (row.size() != columns_.size())
        throw std::invalid_argument("OutputTable: row width mismatch");
    if (!degenerate) {
        for (double v : row)
            if (!std::isfinite(v))
                throw std::invalid_argument(
                    "OutputTable: non-finite value in a row not flagged degenerate");
    }
    rows_.push_back(row);
    flags_.push_back(degenerate);
    any_degenerate_ = any_degenerate_ || degenerate;
}

std::string format_double(double v) {
    char buf[40];
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) {
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v || (std::isnan(back) && std::isnan(v))) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fnv1a_hex(const std::string& data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

void OutputTable::write(const std::filesystem::path& path) const {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open for writing: " + tmp.string());
        for (const auto& [k, v] : meta_) out << "# " << k << ": " << v << "\n";
        for (size_t i = 0; i < columns_.size(); ++i)
            out << (i ? "," : "") << columns_[i];
        if (any_degenerate_) out << ",degenerate";
        out << "\n";
        for (size_t r = 0; r < rows_.size(); ++r) {
            for (size_t i = 0; i < rows_[r].size(); ++i)
                out << (i ? "," : "") << format_double(rows_[r][i]);
            if (any_degenerate_) out << ',' << (flags_[r] ? 1 : 0);
            out << "\n";
        }
        if (!out)
            throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace rqd
