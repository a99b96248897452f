#include "mellin/golden.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mellin/errors.hpp"

namespace mellin {
namespace {

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(const std::string& s, const std::string& line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InvalidArgument("golden: bad number '" + s + "' in: " + line);
  return v;
}

}  // namespace

double GoldenRecord::param(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw InvalidArgument("golden: missing parameter " + key);
  return it->second;
}

std::string format_golden(const GoldenRecord& r) {
  std::string out;
  for (const auto& [k, v] : r.params) {
    if (!out.empty()) out += ',';
    out += k + '=' + number(v);
  }
  if (out.empty()) out = "-";
  return out + ' ' + number(r.value) + ' ' + r.method + ' ' + number(r.tolerance);
}

GoldenRecord parse_golden(const std::string& line) {
  std::istringstream in(line);
  std::string params, value, method, tol, extra;
  if (!(in >> params >> value >> method >> tol) || (in >> extra))
    throw InvalidArgument("golden: expected four fields in: " + line);
  GoldenRecord r;
  if (params != "-") {
    std::istringstream ps(params);
    std::string item;
    while (std::getline(ps, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw InvalidArgument("golden: bad parameter '" + item + "'");
      r.params[item.substr(0, eq)] = parse_number(item.substr(eq + 1), line);
    }
  }
  r.value = parse_number(value, line);
  r.method = method;
  r.tolerance = parse_number(tol, line);
  return r;
}

std::vector<GoldenRecord> read_golden(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("golden: cannot open " + path);
  std::vector<GoldenRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(parse_golden(line));
  }
  return out;
}

void write_golden(const std::string& path, const std::vector<GoldenRecord>& records, const std::string& header) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("golden: cannot write " + path);
  if (!header.empty()) out << "# " << header << '\n';
  for (const auto& r : records) out << format_golden(r) << '\n';
}

}  // namespace mellin
