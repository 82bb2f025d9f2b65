#include "l0l1fw/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "l0l1fw/trace_io.hpp"

namespace l0l1fw {

namespace {

constexpr double kE = std::numbers::e;

bool uses_l0l1_step(SolverKind s) {
  return s == SolverKind::l0l1 || s == SolverKind::adapt_l0l1;
}

}  // namespace

void CheckResult::record(std::size_t iter, double slack, double tolerance) {
  applied = true;
  ++checked;
  if (slack < -tolerance) ++violations;
  if (slack < worst_slack) {
    worst_slack = slack;
    worst_iter = iter;
  }
}

double fstar_lower_bound(const std::vector<IterateRecord>& records) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& r : records) best = std::max(best, r.f_value - r.fw_gap);
  return best;
}

double adaptation_check_bound(std::size_t steps, const SmoothnessParams& known,
                              const AdaptiveBoundInputs& a) {
  const double log_down = std::log(a.rho - 1.0);
  const double per_step = 1.0 + std::log(a.rho + 1.0) / log_down;
  const double top = std::min(a.rho * known.l0, a.l0_max) + std::min(a.rho * known.l1, a.l1_max);
  return static_cast<double>(steps) * per_step +
         std::log(top / (a.l0_init + a.l1_init)) / log_down;
}

RateDiagnostics rate_diagnostics(SolverKind solver, const std::vector<IterateRecord>& records,
                                 const BoundMetadata& meta, double gap_eps,
                                 std::optional<std::size_t> steps,
                                 std::optional<std::size_t> total_inner_checks) {
  RateDiagnostics out;
  out.solver = solver;
  out.iters_to_tol = iterations_to_gap(records, gap_eps);
  if (records.empty()) return out;

  const double f_star = meta.f_star;
  const double diam_sq = meta.diameter * meta.diameter;
  const bool l0l1_step = uses_l0l1_step(solver);

  double sup_grad = 0.0;
  for (const auto& r : records) {
    (r.regime == Regime::T ? out.t_regime : out.k_regime) += 1;
  }

  for (std::size_t k = 0; k < records.size(); ++k) {
    const IterateRecord& r = records[k];
    const double h = r.f_value - f_star;
    sup_grad = std::max(sup_grad, r.grad_norm);

    if (meta.interior_radius) {
      out.interior_scaling.record(r.iter, r.fw_gap - *meta.interior_radius * r.grad_norm,
                                  kScalingSlack);
    }

    if (solver == SolverKind::l0l1) {
      const double envelope = 2.0 * kE * (meta.smoothness.l0 + meta.smoothness.l1 * sup_grad) *
                              diam_sq / (static_cast<double>(r.iter) + 3.0);
      out.sublinear.record(r.iter, envelope - h, slack_for(r.f_value));
    }

    if (k + 1 >= records.size()) continue;
    const IterateRecord& next = records[k + 1];
    // A thinned trace has gaps between records; pairwise checks need x_{k+1}.
    if (next.iter != r.iter + 1) continue;
    const double h_next = next.f_value - f_star;

    out.monotone.record(r.iter, r.f_value - next.f_value, slack_for(r.f_value));
    if (h > 0.0) out.contraction.push_back(h_next / h);

    if (!l0l1_step) continue;

    out.descent.record(r.iter, -0.5 * r.alpha * r.fw_gap - (next.f_value - r.f_value),
                       slack_for(r.f_value));

    if (r.l1_k > 0.0 && r.a_k > 0.0) {
      const double step_len = std::sqrt(r.alpha * r.fw_gap / (r.a_k * kE));
      out.step_length.record(r.iter, 1.0 / r.l1_k - step_len, kRelativeSlack);
    }

    const bool full_step = r.alpha >= 1.0;
    if (meta.set_strong_convexity && r.a_k > 0.0) {
      const double lambda = *meta.set_strong_convexity;
      const double q = full_step ? 0.5 : 1.0 - lambda * r.grad_norm / (2.0 * kE * r.a_k);
      const double q_strict = full_step ? 0.5 : 1.0 - lambda * r.grad_norm / (kE * r.a_k);
      out.strongly_convex_set.record(r.iter, q * h - h_next, kContractionSlack);
      out.strongly_convex_set_strict.record(r.iter, q_strict * h - h_next, kContractionSlack);
    }

    if (meta.pl_constant && meta.interior_radius) {
      const double mu = *meta.pl_constant;
      const double rad = *meta.interior_radius;
      double q = 0.5;
      if (!full_step) {
        q = r.regime == Regime::T ? 1.0 - rad / (4.0 * kE * r.l1_k * diam_sq)
                                  : 1.0 - rad * rad * mu / (2.0 * kE * r.l0_k * diam_sq);
      }
      out.pl_interior.record(r.iter, q * h - h_next, kContractionSlack);
    }
  }

  if (solver == SolverKind::adapt_l0l1 && meta.adaptive && meta.adaptive->rho > 2.0) {
    out.adaptation.applied = true;
    out.adaptation.steps = steps ? *steps : records.size() - 1;
    std::size_t total = 0;
    for (const auto& r : records) total += r.inner_checks;
    out.adaptation.total_checks = total_inner_checks ? *total_inner_checks : total;
    out.adaptation.bound =
        adaptation_check_bound(out.adaptation.steps, meta.smoothness, *meta.adaptive);
  }
  return out;
}

RateDiagnostics rate_diagnostics(SolverKind solver, const Trace& trace,
                                 const BoundMetadata& meta, double gap_eps) {
  return rate_diagnostics(solver, trace.records, meta, gap_eps, trace.steps,
                          trace.total_inner_checks);
}

namespace {

void write_check(std::ostream& out, std::string_view prefix, std::string_view name,
                 const CheckResult& c) {
  out << prefix << '.' << name << ".applied=" << (c.applied ? 1 : 0) << '\n';
  if (!c.applied) return;
  out << prefix << '.' << name << ".checked=" << c.checked << '\n';
  out << prefix << '.' << name << ".violations=" << c.violations << '\n';
  out << prefix << '.' << name << ".worst_slack=" << format_double(c.worst_slack) << '\n';
  out << prefix << '.' << name << ".worst_iter=" << c.worst_iter << '\n';
}

}  // namespace

void write_diagnostics(std::string_view prefix, const RateDiagnostics& d, std::ostream& out) {
  out << prefix << ".iters_to_tol="
      << (d.iters_to_tol ? static_cast<long long>(*d.iters_to_tol) : -1LL) << '\n';
  out << prefix << ".regime_t=" << d.t_regime << '\n';
  out << prefix << ".regime_k=" << d.k_regime << '\n';
  write_check(out, prefix, "monotone", d.monotone);
  write_check(out, prefix, "descent", d.descent);
  write_check(out, prefix, "step_length", d.step_length);
  write_check(out, prefix, "sublinear", d.sublinear);
  write_check(out, prefix, "strongly_convex_set", d.strongly_convex_set);
  write_check(out, prefix, "strongly_convex_set_strict", d.strongly_convex_set_strict);
  write_check(out, prefix, "pl_interior", d.pl_interior);
  write_check(out, prefix, "interior_scaling", d.interior_scaling);
  out << prefix << ".adaptation.applied=" << (d.adaptation.applied ? 1 : 0) << '\n';
  if (d.adaptation.applied) {
    out << prefix << ".adaptation.total_checks=" << d.adaptation.total_checks << '\n';
    out << prefix << ".adaptation.steps=" << d.adaptation.steps << '\n';
    out << prefix << ".adaptation.bound=" << format_double(d.adaptation.bound) << '\n';
    out << prefix << ".adaptation.passed=" << (d.adaptation.passed() ? 1 : 0) << '\n';
  }
  if (!d.contraction.empty()) {
    std::vector<double> sorted = d.contraction;
    std::sort(sorted.begin(), sorted.end());
    out << prefix << ".contraction.count=" << sorted.size() << '\n';
    out << prefix << ".contraction.min=" << format_double(sorted.front()) << '\n';
    out << prefix << ".contraction.median=" << format_double(sorted[sorted.size() / 2]) << '\n';
    out << prefix << ".contraction.max=" << format_double(sorted.back()) << '\n';
  }
}

}  // namespace l0l1fw
