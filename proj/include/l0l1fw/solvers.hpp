#pragma once

// Frank-Wolfe variants sharing one iteration skeleton:
//
//   s_k = lmo(grad f(x_k)),  d_k = s_k - x_k,  x_{k+1} = x_k + alpha_k d_k
//
// They differ only in how alpha_k is chosen:
//   classic           min{1, -g^T d / (L ||d||^2)}
//   adaptive_classic  same, with L halved each iteration then doubled until
//                     the quadratic upper bound holds at x_{k+1}
//   l0l1              min{1, -g^T d / ((L0 + L1 ||g||) ||d||^2 e)}
//   adapt_l0l1        same, with (L0, L1) divided in proportion to their share
//                     of a_k and re-multiplied alternately until the
//                     e-scaled upper bound holds at x_{k+1}

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "l0l1fw/core.hpp"
#include "l0l1fw/feasible_sets.hpp"
#include "l0l1fw/objectives.hpp"

namespace l0l1fw {

/// Objective, set, starting point and whatever is known about the optimum.
struct Problem {
  std::shared_ptr<const Objective> objective;
  std::shared_ptr<const FeasibleSet> set;
  Vector x0;
  std::string name;

  /// mu of the PL inequality, when known.
  std::optional<double> pl_constant;
  /// r with B(x*, r) contained in the set, when known.
  std::optional<double> interior_radius;
  std::optional<Vector> x_star;
  std::optional<double> f_star;

  /// Throws std::invalid_argument on missing pieces, dimension mismatch or
  /// an infeasible x0.
  void validate() const;
};

enum class SolverKind { classic, adaptive_classic, l0l1, adapt_l0l1 };

std::string_view to_string(SolverKind kind);
/// Throws std::invalid_argument for unknown names.
SolverKind parse_solver_kind(std::string_view name);

/// Which upper model the adaptive (L0, L1) method accepts a step against.
enum class SurrogateForm {
  /// f_next <= f + alpha g^T d + (a e / 2) alpha^2 ||d||^2
  e_scaled,
  /// f_next <= f + alpha g^T d + (a / 2) exp(alpha L1 ||d||) alpha^2 ||d||^2
  exponential,
};

struct SolverConfig {
  std::size_t max_iter = 10000;
  double gap_tol = 1e-6;
  std::size_t record_stride = 1;

  // classic: falls back to the objective's classic_l when unset.
  std::optional<double> classic_l;

  // adaptive_classic
  double l_init = 1.0;
  std::size_t max_doublings = 200;

  // l0l1: falls back to the objective's (L0, L1) when unset.
  std::optional<SmoothnessParams> smoothness;

  // adapt_l0l1
  double l0_init = 1.0;
  double l1_init = 1.0;
  double l0_max = 1e12;
  double l1_max = 1e12;
  double rho = 2.0;
  std::size_t inner_cap = 500;
  SurrogateForm surrogate = SurrogateForm::e_scaled;

  void validate() const;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StepOutcome {
  double alpha = 0.0;
  Vector next_point;
  /// Right-hand side of the acceptance check evaluated at this step.
  double surrogate_rhs = 0.0;
};

/// alpha = min{1, -g^T d / ((l0 + l1 ||g||) ||d||^2 e)}, clamped below at 0.
/// Guarantees alpha ||d|| <= 1 / (e l1) when l1 > 0.
/// Throws std::invalid_argument for d = 0 or l0 + l1 ||g|| = 0.
double step_size_l0l1(const Vector& g, const Vector& d, double l0, double l1);

/// f(x) + alpha g^T d + (a_k e / 2) alpha^2 ||d||^2.
double surrogate_bound(double f_curr, double g_dot_d, double d_norm_sq, double alpha,
                       double a_k);

/// True iff f_next <= surrogate_bound(...) + 1e-12 max(1, |f_curr|).
bool surrogate_check(double f_curr, double f_next, const Vector& g, const Vector& d,
                     double alpha, double a_k);

/// Termination test for a populated record: zero direction first, then the
/// gap tolerance, then the iteration budget.
std::optional<TerminationReason> should_stop(const IterateRecord& record,
                                             const SolverConfig& config);

Trace run_classic_fw(const Problem& problem, const SolverConfig& config);
Trace run_adaptive_classic_fw(const Problem& problem, const SolverConfig& config);
/// Fixed-parameter (L0, L1) Frank-Wolfe.
Trace run_l0l1_fw(const Problem& problem, const SolverConfig& config);
/// Adaptive (L0, L1) Frank-Wolfe.
Trace run_adapt_l0l1_fw(const Problem& problem, const SolverConfig& config);

Trace run_solver(SolverKind kind, const Problem& problem, const SolverConfig& config);

}  // namespace l0l1fw
