#include "nres/reports.hpp"

#include <cstdio>

namespace nres {

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) throw DimensionMismatch("table row width mismatch");
  rows.push_back(std::move(row));
}

bool DiagnosticsReport::all_pass() const {
  for (const CheckRecord& c : checks)
    if (!c.informational && !c.pass) return false;
  return true;
}

const CheckRecord* DiagnosticsReport::find(const std::string& name) const {
  for (const CheckRecord& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace nres
