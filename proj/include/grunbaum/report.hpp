#pragma once

// Machine-readable verification reports.  The CSV layout is part of the tool
// contract: a fixed 12-column header, 12 significant digits for reals, vector
// directions written as space-separated components inside one field, RFC-4180
// quoting, and "\n" line endings.  Identical runs must produce byte-identical
// files.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace grunbaum {

struct CutReport {
  std::string body_id;
  std::string measure_class;  // "lebesgue" | "gaussian" | "sconcave"
  int dim = 0;
  std::vector<double> direction;
  double cut_offset = 0;      // threshold c = <g, u>
  double total = 0;           // t: total mass of the body
  double measured = 0;        // mass on the barycenter side (class convention)
  double bound = 0;
  double gap = 0;             // measured - bound
  bool equality = false;
  std::string method;         // e.g. "exact-clip", "marginal-quadrature", "mc-box"
  std::uint64_t samples = 0;  // 0 for deterministic paths
  std::uint64_t seed = 0;
  // Diagnostics (not part of the CSV contract):
  double standard_error = 0;  // 0 for deterministic paths
  double affinity = -1;       // equality-profile affinity score; -1 = n/a
};

/// Shortest round-trippable representation at 12 significant digits.
std::string format_g12(double x);

/// RFC-4180 quoting: wraps in quotes when the field contains a comma, quote,
/// or newline; embedded quotes are doubled.
std::string csv_escape(const std::string& field);

std::string cut_report_csv_header();
std::string cut_report_csv_row(const CutReport& r);
void write_cut_reports_csv(std::ostream& os, const std::vector<CutReport>& rows);

}  // namespace grunbaum
