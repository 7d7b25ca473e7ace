// io.hpp — deterministic CSV and flat key:value result writers.
#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "liouv/common.hpp"

namespace liouv {

std::string format_g17(double v);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void raw_row(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
  size_t columns_;
};

// one `key: value` per line, nested keys dotted
class ResultWriter {
 public:
  explicit ResultWriter(const std::string& path);
  void put(const std::string& key, double value);
  void put(const std::string& key, long value);
  void put(const std::string& key, const std::string& value);

 private:
  std::ofstream out_;
};

}  // namespace liouv
