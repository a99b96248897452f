#pragma once

#include <map>
#include <string>
#include <vector>

namespace mellin {

// One line: "<key=value,...> <value> <method> <tolerance>". Lines starting with '#' are comments.
struct GoldenRecord {
  std::map<std::string, double> params;
  double value = 0.0;
  std::string method;
  double tolerance = 0.0;

  double param(const std::string& key) const;
};

std::string format_golden(const GoldenRecord& r);
GoldenRecord parse_golden(const std::string& line);

std::vector<GoldenRecord> read_golden(const std::string& path);
void write_golden(const std::string& path, const std::vector<GoldenRecord>& records, const std::string& header = "");

}  // namespace mellin
