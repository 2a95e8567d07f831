#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nres/linalg.hpp"

namespace nres {

/// Flat numeric table with named columns; serializes to CSV with a header row.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

/// Outcome of one named inequality or consistency check. A check passes when
/// its worst margin stays above -threshold. Informational records never gate.
struct CheckRecord {
  std::string name;
  bool pass = true;
  bool vacuous = false;
  bool informational = false;
  double margin = 0.0;
  double threshold = 0.0;
  long samples = 0;
  CVector worst_point;
  std::string note;
};

struct DiagnosticsReport {
  std::vector<CheckRecord> checks;
  Table samples;

  bool all_pass() const;
  const CheckRecord* find(const std::string& name) const;
};

struct AccretivityReport {
  double a_star = 0.0;
  double a_star_boundary_extrapolated = 0.0;
  double k_pi = 0.0;
  double k_zero = 0.0;
  bool linear_part_strongly_accretive = false;
  CVector worst_point;
  long samples_used = 0;
};

struct OrderEstimate {
  double gamma_hat = 0.0;
  CVector worst_point;
  long samples_used = 0;
  std::string method;  // "generic" or "resolvent-identity"
  bool degenerate = false;
};

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double v);

std::string to_csv(const Table& table);

}  // namespace nres
