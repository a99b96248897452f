#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mellin::cli {

using Cell = std::variant<double, long long, bool, std::string>;
using Fields = std::vector<std::pair<std::string, Cell>>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Report {
  std::string command;
  Fields params;
  Fields summary;  // scalar results
  std::vector<Table> tables;
  Fields diagnostics;
  std::vector<std::string> warnings;
};

enum class Format { kHuman, kJson, kCsv };

// Machine formats print every double with 17 significant digits.
void write_report(const Report& r, Format format, std::ostream& out);

std::string format_double(double v, int digits);

}  // namespace mellin::cli
