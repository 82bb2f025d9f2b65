#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "l0l1fw/solvers.hpp"
#include "l0l1fw/trace_io.hpp"
#include "support/problems.hpp"

using namespace l0l1fw;

namespace {

Trace sample_trace() {
  Problem p = testprob::exterior_quadratic_on_ball();
  SolverConfig c;
  c.max_iter = 50;
  c.gap_tol = 0.0;
  return run_solver(SolverKind::adapt_l0l1, p, c);
}

}  // namespace

TEST(FormatDouble, RoundTripsExactly) {
  for (double v : {0.0, -0.0, 1.0, 0.1, 1.0 / 3.0, 1e-300, -2.5e17, 6.02214076e23,
                   std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max()}) {
    const std::string s = format_double(v);
    double back = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(res.ec, std::errc()) << s;
    EXPECT_EQ(back, v) << s;
  }
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(TraceCsv, HeaderAndRoundTrip) {
  const Trace t = sample_trace();
  std::stringstream buf;
  write_trace_csv(t, buf);
  const std::string text = buf.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "iter,f,gap,alpha,a_k,l0_k,l1_k,grad_norm,inner_checks,regime");

  const auto back = read_trace_csv(buf);
  ASSERT_EQ(back.size(), t.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    const auto& a = t.records[i];
    const auto& b = back[i];
    EXPECT_EQ(a.iter, b.iter);
    EXPECT_EQ(a.f_value, b.f_value);
    EXPECT_EQ(a.fw_gap, b.fw_gap);
    EXPECT_EQ(a.alpha, b.alpha);
    EXPECT_EQ(a.a_k, b.a_k);
    EXPECT_EQ(a.l0_k, b.l0_k);
    EXPECT_EQ(a.l1_k, b.l1_k);
    EXPECT_EQ(a.grad_norm, b.grad_norm);
    EXPECT_EQ(a.inner_checks, b.inner_checks);
    EXPECT_EQ(a.regime, b.regime);
    EXPECT_TRUE(std::isnan(b.d_norm));
  }
  // Writing the parsed records reproduces the bytes.
  Trace again;
  again.records = back;
  std::ostringstream second;
  write_trace_csv(again, second);
  EXPECT_EQ(second.str(), buf.str());
}

TEST(TraceCsv, AcceptsCrlf) {
  std::istringstream in(
      "iter,f,gap,alpha,a_k,l0_k,l1_k,grad_norm,inner_checks,regime\r\n"
      "0,1,0.5,1,2,1,1,1,1,T\r\n");
  const auto r = read_trace_csv(in);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].regime, Regime::T);
}

TEST(TraceCsv, RejectsMalformed) {
  const std::string header = "iter,f,gap,alpha,a_k,l0_k,l1_k,grad_norm,inner_checks,regime\n";
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_trace_csv(in);
  };
  EXPECT_THROW(parse(""), CsvFormatError);
  EXPECT_THROW(parse("iter,f\n"), CsvFormatError);
  EXPECT_THROW(parse(header + "0,1,0.5,1,2,1,1,1,1\n"), CsvFormatError);
  EXPECT_THROW(parse(header + "0,1,abc,1,2,1,1,1,1,T\n"), CsvFormatError);
  EXPECT_THROW(parse(header + "0,1,0.5,1,2,1,1,1,1,X\n"), CsvFormatError);
  EXPECT_THROW(parse(header + "-1,1,0.5,1,2,1,1,1,1,K\n"), CsvFormatError);
  EXPECT_THROW(parse(header + "0,1,0.5,1,2,1,1,1,1.5,K\n"), CsvFormatError);
  // Truncated final row, as left by an interrupted writer.
  EXPECT_THROW(parse(header + "0,1,0.5,1,2,1,1,1,1,K\n1,0.9,0.4"), CsvFormatError);
  try {
    parse(header + "0,1,0.5,1,2,1,1,1,1,K\n1,x,0.4,1,2,1,1,1,1,K\n");
    FAIL();
  } catch (const CsvFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_TRUE(parse(header).empty());
}

TEST(SummaryCsv, RoundTripAndUnreached) {
  SummaryRow a;
  a.instance_id = "box_dim_n200_d5";
  a.setting = "box_dim";
  a.n = 200;
  a.d = 5;
  a.solver = "l0l1";
  a.iters_to_tol = 42;
  a.final_gap = 1e-7;
  a.final_f = 0.25;
  a.total_inner_checks = 43;
  a.wall_time_ms = 1.5;
  SummaryRow b = a;
  b.solver = "classic";
  b.iters_to_tol.reset();

  std::stringstream buf;
  write_summary_header(buf);
  write_summary_row(a, buf);
  write_summary_row(b, buf);
  EXPECT_NE(buf.str().find(",classic,-1,"), std::string::npos);

  const auto rows = read_summary_csv(buf);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].instance_id, a.instance_id);
  EXPECT_EQ(rows[0].iters_to_tol, std::optional<std::size_t>(42));
  EXPECT_FALSE(rows[1].iters_to_tol.has_value());
  EXPECT_EQ(rows[1].final_gap, 1e-7);
  EXPECT_EQ(rows[1].total_inner_checks, 43u);
  EXPECT_EQ(rows[1].wall_time_ms, 1.5);

  std::istringstream bad(std::string(kSummaryHeader) + "\nx,y,1,2,z\n");
  EXPECT_THROW(read_summary_csv(bad), CsvFormatError);
  std::istringstream empty("");
  EXPECT_THROW(read_summary_csv(empty), CsvFormatError);
}

TEST(IterationsToGap, FirstCrossing) {
  const Trace t = sample_trace();
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const auto k = iterations_to_gap(t.records, eps);
    if (!k) continue;
    EXPECT_LE(t.records[*k].fw_gap, eps);
    for (std::size_t j = 0; j < *k; ++j) EXPECT_GT(t.records[j].fw_gap, eps);
  }
  EXPECT_FALSE(iterations_to_gap(t.records, -1.0).has_value());
  EXPECT_EQ(iterations_to_gap(t.records, 1e300), std::optional<std::size_t>(0));
}
