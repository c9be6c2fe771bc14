#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace qsym {

// Round-trip rendering %.17g, with inf/-inf/nan spelled out.
std::string fmt(double v);

class CsvWriter {
 public:
  // Throws std::runtime_error when the file cannot be opened.
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  std::size_t rows() const { return rows_; }

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::size_t rows_ = 0;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index or -1.
  int column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

}  // namespace qsym
