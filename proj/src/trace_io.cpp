#include "l0l1fw/trace_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

namespace l0l1fw {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw CsvFormatError("line " + std::to_string(line_no) + ": " + what);
}

double parse_double(std::string_view s, std::size_t line_no) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    fail(line_no, "bad number '" + std::string(s) + "'");
  }
  return v;
}

long long parse_int(std::string_view s, std::size_t line_no) {
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    fail(line_no, "bad integer '" + std::string(s) + "'");
  }
  return v;
}

std::size_t parse_count(std::string_view s, std::size_t line_no) {
  const long long v = parse_int(s, line_no);
  if (v < 0) fail(line_no, "negative count '" + std::string(s) + "'");
  return static_cast<std::size_t>(v);
}

bool read_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

}  // namespace

void write_trace_csv(const Trace& trace, std::ostream& out) {
  out << kTraceHeader << '\n';
  for (const auto& r : trace.records) {
    out << r.iter << ',' << format_double(r.f_value) << ',' << format_double(r.fw_gap) << ','
        << format_double(r.alpha) << ',' << format_double(r.a_k) << ','
        << format_double(r.l0_k) << ',' << format_double(r.l1_k) << ','
        << format_double(r.grad_norm) << ',' << r.inner_checks << ','
        << regime_code(r.regime) << '\n';
  }
}

std::vector<IterateRecord> read_trace_csv(std::istream& in) {
  std::string line;
  if (!read_line(in, line)) fail(1, "empty trace file");
  if (line != kTraceHeader) fail(1, "unexpected header '" + line + "'");
  std::vector<IterateRecord> records;
  std::size_t line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 10) {
      fail(line_no, "expected 10 fields, found " + std::to_string(f.size()));
    }
    IterateRecord r;
    r.iter = parse_count(f[0], line_no);
    r.f_value = parse_double(f[1], line_no);
    r.fw_gap = parse_double(f[2], line_no);
    r.alpha = parse_double(f[3], line_no);
    r.a_k = parse_double(f[4], line_no);
    r.l0_k = parse_double(f[5], line_no);
    r.l1_k = parse_double(f[6], line_no);
    r.grad_norm = parse_double(f[7], line_no);
    r.inner_checks = parse_count(f[8], line_no);
    if (f[9] == "T") {
      r.regime = Regime::T;
    } else if (f[9] == "K") {
      r.regime = Regime::K;
    } else {
      fail(line_no, "regime must be T or K");
    }
    r.d_norm = std::numeric_limits<double>::quiet_NaN();
    records.push_back(r);
  }
  return records;
}

void write_summary_header(std::ostream& out) { out << kSummaryHeader << '\n'; }

void write_summary_row(const SummaryRow& row, std::ostream& out) {
  out << row.instance_id << ',' << row.setting << ',' << row.n << ',' << row.d << ','
      << row.solver << ','
      << (row.iters_to_tol ? static_cast<long long>(*row.iters_to_tol) : -1LL) << ','
      << format_double(row.final_gap) << ',' << format_double(row.final_f) << ','
      << row.total_inner_checks << ',' << format_double(row.wall_time_ms) << '\n';
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  std::string line;
  if (!read_line(in, line)) fail(1, "empty summary file");
  if (line != kSummaryHeader) fail(1, "unexpected header '" + line + "'");
  std::vector<SummaryRow> rows;
  std::size_t line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 10) {
      fail(line_no, "expected 10 fields, found " + std::to_string(f.size()));
    }
    SummaryRow row;
    row.instance_id = std::string(f[0]);
    row.setting = std::string(f[1]);
    row.n = parse_count(f[2], line_no);
    row.d = parse_count(f[3], line_no);
    row.solver = std::string(f[4]);
    const long long iters = parse_int(f[5], line_no);
    if (iters >= 0) row.iters_to_tol = static_cast<std::size_t>(iters);
    row.final_gap = parse_double(f[6], line_no);
    row.final_f = parse_double(f[7], line_no);
    row.total_inner_checks = parse_count(f[8], line_no);
    row.wall_time_ms = parse_double(f[9], line_no);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<std::size_t> iterations_to_gap(const std::vector<IterateRecord>& records,
                                             double eps) {
  for (const auto& r : records) {
    if (r.fw_gap <= eps) return r.iter;
  }
  return std::nullopt;
}

}  // namespace l0l1fw
