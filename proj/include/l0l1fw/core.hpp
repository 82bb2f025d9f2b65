#pragma once

// Shared numeric types for the Frank-Wolfe solvers: smoothness parameters,
// adaptive state, per-iteration records and traces.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace l0l1fw {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Constants (L0, L1) of generalized smoothness
///   ||grad f(x) - grad f(y)|| <= (L0 + L1 ||grad f(y)||) ||x - y||,
/// plus the classical Lipschitz constant of the gradient when it exists.
struct SmoothnessParams {
  double l0 = 0.0;
  double l1 = 0.0;
  std::optional<double> classic_l;

  /// Validating constructor; throws std::invalid_argument on negative or
  /// all-zero constants or a non-positive classic_l.
  static SmoothnessParams make(double l0, double l1,
                               std::optional<double> classic_l = std::nullopt);

  void validate() const;
};

/// Mutable parameter state of the adaptive (L0, L1) method. Owned by a
/// single solver run.
struct AdaptiveState {
  double l0_k = 1.0;
  double l1_k = 1.0;
  double l0_max = 1e12;
  double l1_max = 1e12;
  double rho = 2.0;
  bool toggle = false;

  void validate() const;
};

enum class Regime { T, K };
enum class TerminationReason { gap_tol, max_iter, zero_direction };

std::string_view to_string(TerminationReason reason);
char regime_code(Regime regime);

/// T when l0 <= l1 * grad_norm, K otherwise.
Regime classify_regime(double l0, double l1, double grad_norm);

/// One Frank-Wolfe iteration at x_k. `alpha`, `inner_checks` describe the
/// step taken from x_k; the terminal record of a run carries alpha = 0.
struct IterateRecord {
  std::size_t iter = 0;
  double f_value = 0.0;
  double fw_gap = 0.0;
  double alpha = 0.0;
  double a_k = 0.0;
  double l0_k = 0.0;
  double l1_k = 0.0;
  double grad_norm = 0.0;
  double d_norm = 0.0;  // ||s_k - x_k||; not serialized
  std::size_t inner_checks = 0;
  Regime regime = Regime::K;
};

struct Trace {
  std::vector<IterateRecord> records;
  TerminationReason termination = TerminationReason::max_iter;
  std::size_t steps = 0;  // number of updates x_k -> x_{k+1} performed
  std::size_t total_inner_checks = 0;
  Vector final_point;
};

/// a_k = l0 + l1 * grad_norm. Empty when the result is zero, which only
/// happens for l0 = 0 at a stationary point.
std::optional<double> combined_constant(const SmoothnessParams& params,
                                        double grad_norm);
std::optional<double> combined_constant(const AdaptiveState& state,
                                        double grad_norm);

/// -g^T d. With d = lmo(g) - x this is the Frank-Wolfe gap at x.
double directional_gap(const Vector& g, const Vector& d);

/// Relative slack used by every monotonicity / descent comparison.
inline constexpr double kRelativeSlack = 1e-12;

inline double slack_for(double f) {
  return kRelativeSlack * std::max(1.0, std::abs(f));
}

/// f_value non-increasing across consecutive records, up to slack_for(f).
bool is_monotone_nonincreasing(const Trace& trace);

}  // namespace l0l1fw
