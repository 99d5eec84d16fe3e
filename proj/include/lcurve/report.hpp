#ifndef LCURVE_REPORT_HPP
#define LCURVE_REPORT_HPP

#include <ostream>
#include <string>
#include <vector>

#include "lcurve/approx.hpp"
#include "lcurve/quadrature.hpp"

namespace lcurve {

// Deterministic CSV emission: fixed column order, shortest round-trip
// decimals for doubles, "p/q" text for rationals, header always written.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);

  static std::string cell(double v) { return double_str(v); }
  static std::string cell(const Rat& v) { return rat_str(v); }
  static std::string cell(bool v) { return v ? "pass" : "fail"; }
  static std::string cell(long v) { return std::to_string(v); }

 private:
  std::ostream& out_;
};

// operation, seminorm, p, param, claimed bound, measured, pass
void write_report_header(CsvWriter& csv);
void write_report_row(CsvWriter& csv, const ApproxReport& report);

// curve, seminorm, p, value, error bound, cells, method
void write_quadrature_header(CsvWriter& csv);
void write_quadrature_row(CsvWriter& csv, const std::string& curve_id,
                          const std::string& q_id, double p,
                          const QuadratureResult& result);

}  // namespace lcurve

#endif  // LCURVE_REPORT_HPP
