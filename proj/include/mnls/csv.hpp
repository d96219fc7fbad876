#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace mnls {

/// Shortest round-trip decimal form (std::to_chars): locale-independent and
/// bit-stable, so identical runs produce byte-identical CSVs.
std::string csv_format(double v);

class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);

    void begin_row();
    void cell(double v);
    void cell(const std::string& s);
    void cell_empty();
    void end_row();

  private:
    std::ofstream out_;
    bool first_in_row_ = true;
};

}  // namespace mnls
