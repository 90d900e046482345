#include <cstdio>
#include <ostream>

#include "ergorate/rate_lab.hpp"

namespace ergorate {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_rate_report(std::ostream& out, std::span<const ReportRow> rows, const RateFit& fit) {
  out << "T,defect,bound,scaled_defect\n";
  for (const auto& r : rows) {
    out << format_number(r.T) << ',' << format_number(r.defect) << ',' << format_number(r.bound) << ','
        << format_number(r.scaled_defect) << '\n';
  }
  out << "# slope," << format_number(fit.slope) << '\n';
  out << "# intercept," << format_number(fit.intercept) << '\n';
  out << "# r_squared," << format_number(fit.r_squared) << '\n';
  out << "# t_min," << format_number(fit.t_min) << '\n';
  out << "# t_max," << format_number(fit.t_max) << '\n';
  out << "# samples," << fit.samples << '\n';
}

}  // namespace ergorate
