#pragma once

// CSV layouts shared with external tooling.
//
// Trace CSV, one row per recorded iteration:
//   iter,f,gap,alpha,a_k,l0_k,l1_k,grad_norm,inner_checks,regime
// regime is T or K; floating-point fields carry 17 significant digits.
//
// Summary CSV, one row per (instance, solver):
//   instance_id,setting,n,d,solver,iters_to_tol,final_gap,final_f,
//   total_inner_checks,wall_time_ms
// iters_to_tol is -1 when the gap tolerance was never reached.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "l0l1fw/core.hpp"

namespace l0l1fw {

inline constexpr std::string_view kTraceHeader =
    "iter,f,gap,alpha,a_k,l0_k,l1_k,grad_norm,inner_checks,regime";
inline constexpr std::string_view kSummaryHeader =
    "instance_id,setting,n,d,solver,iters_to_tol,final_gap,final_f,total_inner_checks,"
    "wall_time_ms";

class CsvFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// printf("%.17g")-style rendering, independent of the C locale.
std::string format_double(double value);

void write_trace_csv(const Trace& trace, std::ostream& out);
/// Parses a trace CSV. Records come back with d_norm = NaN. Throws
/// CsvFormatError naming the offending line.
std::vector<IterateRecord> read_trace_csv(std::istream& in);

struct SummaryRow {
  std::string instance_id;
  std::string setting;
  std::size_t n = 0;
  std::size_t d = 0;
  std::string solver;
  std::optional<std::size_t> iters_to_tol;
  double final_gap = 0.0;
  double final_f = 0.0;
  std::size_t total_inner_checks = 0;
  double wall_time_ms = 0.0;
};

void write_summary_header(std::ostream& out);
void write_summary_row(const SummaryRow& row, std::ostream& out);
std::vector<SummaryRow> read_summary_csv(std::istream& in);

/// Index of the first record whose gap is <= eps (the recorded iteration
/// number), if any.
std::optional<std::size_t> iterations_to_gap(const std::vector<IterateRecord>& records,
                                             double eps);

}  // namespace l0l1fw
