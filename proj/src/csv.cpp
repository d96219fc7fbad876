#include "mnls/csv.hpp"

#include <charconv>
#include <stdexcept>

namespace mnls {

std::string csv_format(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("csv_format failed");
    return std::string(buf, ptr);
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ',';
        out_ << header[i];
    }
    out_ << '\n';
}

void CsvWriter::begin_row() { first_in_row_ = true; }

void CsvWriter::cell(double v) {
    if (!first_in_row_) out_ << ',';
    out_ << csv_format(v);
    first_in_row_ = false;
}

void CsvWriter::cell(const std::string& s) {
    if (!first_in_row_) out_ << ',';
    out_ << s;
    first_in_row_ = false;
}

void CsvWriter::cell_empty() {
    if (!first_in_row_) out_ << ',';
    first_in_row_ = false;
}

void CsvWriter::end_row() { out_ << '\n'; }

}  // namespace mnls
