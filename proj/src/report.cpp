#include "grunbaum/report.hpp"

#include <cstdio>
#include <ostream>

namespace grunbaum {

std::string format_g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string csv_escape(const std::string& field) {
  bool needs_quote = false;
  for (char c : field) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') {
      needs_quote = true;
      break;
    }
  }
  if (!needs_quote) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string cut_report_csv_header() {
  return "body_id,class,n,u,t,measured,bound,gap,equality,method,samples,seed";
}

std::string cut_report_csv_row(const CutReport& r) {
  std::string u;
  for (std::size_t i = 0; i < r.direction.size(); ++i) {
    if (i) u += ' ';
    u += format_g12(r.direction[i]);
  }
  std::string row;
  row += csv_escape(r.body_id);
  row += ',';
  row += csv_escape(r.measure_class);
  row += ',';
  row += std::to_string(r.dim);
  row += ',';
  row += csv_escape(u);
  row += ',';
  row += format_g12(r.total);
  row += ',';
  row += format_g12(r.measured);
  row += ',';
  row += format_g12(r.bound);
  row += ',';
  row += format_g12(r.gap);
  row += ',';
  row += r.equality ? "true" : "false";
  row += ',';
  row += csv_escape(r.method);
  row += ',';
  row += std::to_string(r.samples);
  row += ',';
  row += std::to_string(r.seed);
  return row;
}

void write_cut_reports_csv(std::ostream& os, const std::vector<CutReport>& rows) {
  os << cut_report_csv_header() << '\n';
  for (const CutReport& r : rows) os << cut_report_csv_row(r) << '\n';
}

}  // namespace grunbaum
