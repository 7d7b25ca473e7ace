#include "liouv/io.hpp"

#include <cstdio>

namespace liouv {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path), columns_(header.size()) {
  if (!out_) throw std::runtime_error("csv: cannot open " + path);
  for (size_t i = 0; i < header.size(); ++i) out_ << header[i] << (i + 1 < header.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw std::invalid_argument("csv: column count mismatch");
  for (size_t i = 0; i < values.size(); ++i) out_ << format_g17(values[i]) << (i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw std::invalid_argument("csv: column count mismatch");
  for (size_t i = 0; i < cells.size(); ++i) out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

ResultWriter::ResultWriter(const std::string& path) : out_(path) {
  if (!out_) throw std::runtime_error("result: cannot open " + path);
}

void ResultWriter::put(const std::string& key, double value) { out_ << key << ": " << format_g17(value) << "\n"; }
void ResultWriter::put(const std::string& key, long value) { out_ << key << ": " << value << "\n"; }
void ResultWriter::put(const std::string& key, const std::string& value) { out_ << key << ": " << value << "\n"; }

}  // namespace liouv
