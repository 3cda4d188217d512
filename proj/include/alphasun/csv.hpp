#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace alphasun {

// Shortest-exact float text (17 significant digits cap), '.' separator,
// no locale involvement. Identical inputs give identical bytes.
std::string csv_number(double v);

// One CSV document, written row by row. Cells are either numbers or
// empty (failed/undefined points). '\n' endings, header mandatory.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void add_row(const std::vector<std::optional<double>>& cells);

  // Serialized document including the header.
  std::string str() const;
  void write_file(const std::string& path) const;

  int rows() const { return rows_; }

 private:
  std::string buf_;
  std::size_t width_;
  int rows_ = 0;
};

}  // namespace alphasun
