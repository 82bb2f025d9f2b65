#pragma once

// Per-iteration verification of the convergence guarantees of the (L0, L1)
// Frank-Wolfe methods against a recorded trace.
//
// Every check reads only fields that the trace CSV carries, plus the
// problem constants in BoundMetadata, so a verdict can be recomputed from the
// emitted files. Notation below: f_k, gap_k, alpha_k, a_k, L0_k, L1_k and
// g_k = grad_norm come from record k; f* is metadata.
//
//   descent       f_{k+1} - f_k <= -(alpha_k / 2) gap_k
//   step length   alpha_k ||d_k|| <= 1 / L1_k, with alpha_k ||d_k|| bounded by
//                 sqrt(alpha_k gap_k / (a_k e)) (exact when alpha_k < 1)
//   sublinear     f_k - f* <= 2 e (L0 + L1 max_{j<=k} g_j) D^2 / (k + 3)
//   set-SC        alpha_k = 1: f_{k+1} - f* <= (f_k - f*) / 2
//                 alpha_k < 1: f_{k+1} - f* <= (f_k - f*)(1 - lambda g_k / (2 e a_k))
//                 (the "strict" variant drops the 2)
//   PL-interior   alpha_k = 1: factor 1/2
//                 alpha_k < 1, T regime: factor 1 - r / (4 e L1_k D^2)
//                 alpha_k < 1, K regime: factor 1 - r^2 mu / (2 e L0_k D^2)
//   interior      gap_k >= r g_k
//   adaptation    sum n_i <= N (1 + log(rho+1)/log(rho-1))
//                   + log((min(rho L0, L0max) + min(rho L1, L1max)) / (L0_0 + L1_0)) / log(rho-1)

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "l0l1fw/core.hpp"
#include "l0l1fw/solvers.hpp"

namespace l0l1fw {

inline constexpr double kContractionSlack = 1e-10;
inline constexpr double kScalingSlack = 1e-9;

struct AdaptiveBoundInputs {
  double rho = 2.0;
  double l0_init = 1.0;
  double l1_init = 1.0;
  double l0_max = 1e12;
  double l1_max = 1e12;
};

struct BoundMetadata {
  double f_star = 0.0;
  double diameter = 0.0;
  /// Known constants of the objective (used by the sublinear and adaptation bounds).
  SmoothnessParams smoothness;
  std::optional<double> set_strong_convexity;  // lambda
  std::optional<double> pl_constant;           // mu
  std::optional<double> interior_radius;       // r
  std::optional<AdaptiveBoundInputs> adaptive;
};

/// Result of one family of per-iteration inequalities. slack = rhs - lhs;
/// a check is violated when slack < -tolerance.
struct CheckResult {
  bool applied = false;
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::size_t worst_iter = 0;

  bool passed() const { return applied && violations == 0; }
  void record(std::size_t iter, double slack, double tolerance);
};

struct AdaptationCheck {
  bool applied = false;
  std::size_t total_checks = 0;
  std::size_t steps = 0;
  double bound = 0.0;
  bool passed() const { return applied && static_cast<double>(total_checks) <= bound; }
};

struct RateDiagnostics {
  SolverKind solver = SolverKind::classic;
  CheckResult monotone;
  CheckResult descent;
  CheckResult step_length;
  CheckResult sublinear;
  CheckResult strongly_convex_set;
  CheckResult strongly_convex_set_strict;
  CheckResult pl_interior;
  CheckResult interior_scaling;
  AdaptationCheck adaptation;
  /// (f_{k+1} - f*) / (f_k - f*) for every consecutive pair with f_k > f*.
  std::vector<double> contraction;
  std::optional<std::size_t> iters_to_tol;
  std::size_t t_regime = 0;
  std::size_t k_regime = 0;
};

/// Largest f_k - gap_k over the records: a lower bound on f* for convex f.
double fstar_lower_bound(const std::vector<IterateRecord>& records);

/// `steps` and `total_inner_checks` default to the values implied by an
/// unthinned trace (every record but the terminal one is a step).
RateDiagnostics rate_diagnostics(SolverKind solver, const std::vector<IterateRecord>& records,
                                 const BoundMetadata& meta, double gap_eps,
                                 std::optional<std::size_t> steps = std::nullopt,
                                 std::optional<std::size_t> total_inner_checks = std::nullopt);

RateDiagnostics rate_diagnostics(SolverKind solver, const Trace& trace,
                                 const BoundMetadata& meta, double gap_eps);

/// The sum-of-checks bound of the adaptive method for N steps.
double adaptation_check_bound(std::size_t steps, const SmoothnessParams& known,
                              const AdaptiveBoundInputs& adaptive);

/// Appends `prefix.key=value` lines.
void write_diagnostics(std::string_view prefix, const RateDiagnostics& diag, std::ostream& out);

}  // namespace l0l1fw
