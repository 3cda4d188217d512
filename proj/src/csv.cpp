#include "alphasun/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "alphasun/errors.hpp"

namespace alphasun {

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  // Shortest round-trip form first; cap at 17 significant digits, which
  // is already exact for binary64.
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string out(buf, res.ptr);
  if (out.find('.') == std::string::npos &&
      out.find('e') == std::string::npos &&
      out.find("inf") == std::string::npos &&
      out.find("nan") == std::string::npos)
    out += ".0";
  return out;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
  if (header.empty()) throw DomainError("CsvWriter needs a header");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) buf_ += ',';
    buf_ += header[i];
  }
  buf_ += '\n';
}

void CsvWriter::add_row(const std::vector<std::optional<double>>& cells) {
  if (cells.size() != width_)
    throw DomainError("CsvWriter row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) buf_ += ',';
    if (cells[i]) buf_ += csv_number(*cells[i]);
  }
  buf_ += '\n';
  ++rows_;
}

std::string CsvWriter::str() const { return buf_; }

void CsvWriter::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << buf_;
  if (!out.flush()) throw Error("short write to " + path);
}

}  // namespace alphasun
