#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>

namespace mellin::cli {
namespace {

std::string json_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

std::string json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? format_double(*d, 17) : "null";
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return json_escape(std::get<std::string>(c));
}

std::string text_cell(const Cell& c, int digits) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d, digits);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

std::string csv_cell(const Cell& c) {
  std::string s = text_cell(c, 17);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += (ch == '"') ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

void json_fields(const Fields& f, std::ostream& out) {
  out << '{';
  for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << json_escape(f[i].first) << ':' << json_cell(f[i].second);
  out << '}';
}

void write_json(const Report& r, std::ostream& out) {
  out << "{\"command\":" << json_escape(r.command) << ",\"params\":";
  json_fields(r.params, out);
  out << ",\"results\":{";
  bool first = true;
  for (const auto& [k, v] : r.summary) {
    out << (first ? "" : ",") << json_escape(k) << ':' << json_cell(v);
    first = false;
  }
  for (const auto& t : r.tables) {
    out << (first ? "" : ",") << json_escape(t.name) << ":[";
    first = false;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      out << (i ? "," : "") << '{';
      for (std::size_t j = 0; j < t.columns.size(); ++j)
        out << (j ? "," : "") << json_escape(t.columns[j]) << ':' << json_cell(t.rows[i][j]);
      out << '}';
    }
    out << ']';
  }
  out << "},\"diagnostics\":";
  Fields diag = r.diagnostics;
  std::string warnings;
  for (std::size_t i = 0; i < r.warnings.size(); ++i) warnings += (i ? "; " : "") + r.warnings[i];
  if (!r.warnings.empty()) diag.emplace_back("warnings", warnings);
  json_fields(diag, out);
  out << "}\n";
}

// Scalars first as a key,value block, then each table under its own header row.
void write_csv(const Report& r, std::ostream& out) {
  bool block = false;
  if (!r.summary.empty()) {
    out << "key,value\n";
    for (const auto& [k, v] : r.summary) out << k << ',' << csv_cell(v) << '\n';
    block = true;
  }
  for (const auto& t : r.tables) {
    if (block) out << '\n';
    for (std::size_t j = 0; j < t.columns.size(); ++j) out << (j ? "," : "") << t.columns[j];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << csv_cell(row[j]);
      out << '\n';
    }
    block = true;
  }
}

void write_human(const Report& r, std::ostream& out) {
  out << r.command << '\n';
  for (const auto& [k, v] : r.params) out << "  " << k << " = " << text_cell(v, 12) << '\n';
  if (!r.summary.empty()) out << '\n';
  for (const auto& [k, v] : r.summary) out << std::left << std::setw(20) << k << text_cell(v, 15) << '\n';
  for (const auto& t : r.tables) {
    out << '\n' << t.name << '\n';
    std::vector<std::size_t> width(t.columns.size());
    std::vector<std::vector<std::string>> text;
    for (std::size_t j = 0; j < t.columns.size(); ++j) width[j] = t.columns[j].size();
    for (const auto& row : t.rows) {
      text.emplace_back();
      for (std::size_t j = 0; j < row.size(); ++j) {
        text.back().push_back(text_cell(row[j], 12));
        width[j] = std::max(width[j], text.back().back().size());
      }
    }
    for (std::size_t j = 0; j < t.columns.size(); ++j) out << std::right << std::setw(width[j] + 2) << t.columns[j];
    out << '\n';
    for (const auto& row : text) {
      for (std::size_t j = 0; j < row.size(); ++j) out << std::right << std::setw(width[j] + 2) << row[j];
      out << '\n';
    }
  }
  if (!r.diagnostics.empty()) out << '\n';
  for (const auto& [k, v] : r.diagnostics) out << std::left << std::setw(20) << k << text_cell(v, 6) << '\n';
}

}  // namespace

std::string format_double(double v, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void write_report(const Report& r, Format format, std::ostream& out) {
  switch (format) {
    case Format::kJson:
      write_json(r, out);
      break;
    case Format::kCsv:
      write_csv(r, out);
      break;
    case Format::kHuman:
      write_human(r, out);
      break;
  }
}

}  // namespace mellin::cli
