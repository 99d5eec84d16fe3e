#include "lcurve/report.hpp"

namespace lcurve {

namespace {

std::string escape(const std::string& s) {
  bool needs_quotes = s.find_first_of(",\"\n") != std::string::npos;
  if (!needs_quotes) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void CsvWriter::header(const std::vector<std::string>& columns) { row(columns); }

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << escape(cells[i]);
  }
  out_ << '\n';
}

void write_report_header(CsvWriter& csv) {
  csv.header({"operation", "seminorm", "p", "param", "claimed_bound", "measured",
              "result"});
}

void write_report_row(CsvWriter& csv, const ApproxReport& report) {
  csv.row({report.operation, report.seminorm, CsvWriter::cell(report.p),
           CsvWriter::cell(report.param), CsvWriter::cell(report.claimed_bound),
           CsvWriter::cell(report.measured), CsvWriter::cell(report.pass)});
}

void write_quadrature_header(CsvWriter& csv) {
  csv.header({"curve", "seminorm", "p", "value", "error_bound", "cells", "method"});
}

void write_quadrature_row(CsvWriter& csv, const std::string& curve_id,
                          const std::string& q_id, double p,
                          const QuadratureResult& result) {
  csv.row({curve_id, q_id, CsvWriter::cell(p), CsvWriter::cell(result.value),
           CsvWriter::cell(result.abs_error_bound), CsvWriter::cell(result.cells),
           result.method == QuadratureResult::Method::ExactPiecewise ? "exact-piecewise"
                                                                     : "adaptive"});
}

}  // namespace lcurve
