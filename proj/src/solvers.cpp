#include "l0l1fw/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace l0l1fw {

namespace {

constexpr double kE = std::numbers::e;
// Adaptive parameters never drop below the smallest normal double, so
// repeated divisions cannot underflow them to zero.
constexpr double kParamFloor = std::numeric_limits<double>::min();

double clamp_unit(double alpha) { return std::clamp(alpha, 0.0, 1.0); }

}  // namespace

// ---------------------------------------------------------------------------

void Problem::validate() const {
  if (!objective || !set) throw std::invalid_argument("problem: missing objective or set");
  if (objective->dimension() != set->dimension()) {
    throw std::invalid_argument("problem: objective and set dimensions differ");
  }
  if (static_cast<std::size_t>(x0.size()) != set->dimension()) {
    throw std::invalid_argument("problem: x0 has the wrong dimension");
  }
  if (!set->contains(x0, 1e-9)) throw std::invalid_argument("problem: x0 is not feasible");
  if (pl_constant && !(*pl_constant > 0.0)) {
    throw std::invalid_argument("problem: PL constant must be positive");
  }
  if (interior_radius && !(*interior_radius > 0.0)) {
    throw std::invalid_argument("problem: interior radius must be positive");
  }
}

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::classic: return "classic";
    case SolverKind::adaptive_classic: return "adaptive_classic";
    case SolverKind::l0l1: return "l0l1";
    case SolverKind::adapt_l0l1: return "adapt_l0l1";
  }
  return "unknown";
}

SolverKind parse_solver_kind(std::string_view name) {
  for (auto kind : {SolverKind::classic, SolverKind::adaptive_classic, SolverKind::l0l1,
                    SolverKind::adapt_l0l1}) {
    if (name == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown solver '" + std::string(name) +
                              "' (expected classic, adaptive_classic, l0l1, adapt_l0l1)");
}

void SolverConfig::validate() const {
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  if (!(gap_tol >= 0.0)) throw std::invalid_argument("gap_tol must be >= 0");
  if (record_stride < 1) throw std::invalid_argument("record_stride must be >= 1");
  if (classic_l && !(*classic_l > 0.0)) throw std::invalid_argument("classic L must be > 0");
  if (!(l_init > 0.0)) throw std::invalid_argument("L_init must be > 0");
  if (smoothness) smoothness->validate();
  AdaptiveState{l0_init, l1_init, l0_max, l1_max, rho, false}.validate();
  if (inner_cap < 1 || max_doublings < 1) {
    throw std::invalid_argument("inner-loop caps must be >= 1");
  }
}

// ---------------------------------------------------------------------------

double step_size_l0l1(const Vector& g, const Vector& d, double l0, double l1) {
  const double d_norm_sq = d.squaredNorm();
  if (d_norm_sq == 0.0) throw std::invalid_argument("step_size_l0l1: zero direction");
  const double a = l0 + l1 * g.norm();
  if (!(a > 0.0)) throw std::invalid_argument("step_size_l0l1: combined constant is zero");
  return clamp_unit(directional_gap(g, d) / (a * d_norm_sq * kE));
}

double surrogate_bound(double f_curr, double g_dot_d, double d_norm_sq, double alpha,
                       double a_k) {
  return f_curr + alpha * g_dot_d + 0.5 * a_k * kE * alpha * alpha * d_norm_sq;
}

bool surrogate_check(double f_curr, double f_next, const Vector& g, const Vector& d,
                     double alpha, double a_k) {
  const double rhs = surrogate_bound(f_curr, g.dot(d), d.squaredNorm(), alpha, a_k);
  return f_next <= rhs + slack_for(f_curr);
}

std::optional<TerminationReason> should_stop(const IterateRecord& record,
                                             const SolverConfig& config) {
  if (record.d_norm == 0.0) return TerminationReason::zero_direction;
  if (record.fw_gap <= config.gap_tol) return TerminationReason::gap_tol;
  if (record.iter >= config.max_iter) return TerminationReason::max_iter;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

/// Everything a step rule needs about the current iterate.
struct IterateView {
  const Vector& x;
  double f;
  const Vector& d;
  double gap;        // -g^T d
  double d_norm_sq;
  double grad_norm;
};

struct RuleStep {
  double alpha = 0.0;
  Vector next;
  std::size_t checks = 0;
};

/// Shared iteration loop. `Rule` provides
///   void describe(IterateRecord&) const  -- parameters in force at x_k
///   RuleStep step(const IterateView&, IterateRecord&)
template <class Rule>
Trace run_skeleton(const Problem& problem, const SolverConfig& config, Rule& rule) {
  problem.validate();
  config.validate();
  const Objective& objective = *problem.objective;
  const FeasibleSet& set = *problem.set;

  Trace trace;
  Vector x = problem.x0;
  Vector d(x.size());
  for (std::size_t k = 0;; ++k) {
    auto [f, g] = objective.value_and_gradient(x);
    IterateRecord record;
    record.iter = k;
    record.f_value = f;
    record.grad_norm = g.norm();
    if (record.grad_norm > 0.0) {
      d = set.lmo(g) - x;
      record.d_norm = d.norm();
      record.fw_gap = std::max(0.0, directional_gap(g, d));
    } else {
      d.setZero();
      record.d_norm = 0.0;
      record.fw_gap = 0.0;
    }
    rule.describe(record);
    record.regime = classify_regime(record.l0_k, record.l1_k, record.grad_norm);

    auto stop = should_stop(record, config);
    if (!stop && !(record.a_k > 0.0)) stop = TerminationReason::zero_direction;
    if (stop) {
      trace.termination = *stop;
      trace.records.push_back(record);
      break;
    }

    const IterateView view{x, f, d, record.fw_gap, record.d_norm * record.d_norm,
                           record.grad_norm};
    RuleStep step = rule.step(view, record);
    record.alpha = step.alpha;
    record.inner_checks = step.checks;
    record.regime = classify_regime(record.l0_k, record.l1_k, record.grad_norm);
    trace.total_inner_checks += step.checks;
    ++trace.steps;
    if (k % config.record_stride == 0) trace.records.push_back(record);
    x = std::move(step.next);
  }
  trace.final_point = std::move(x);
  return trace;
}

class ClassicRule {
 public:
  explicit ClassicRule(double l) : l_(l) {}

  void describe(IterateRecord& r) const {
    r.a_k = l_;
    r.l0_k = l_;
    r.l1_k = 0.0;
  }

  RuleStep step(const IterateView& it, IterateRecord&) const {
    const double alpha = clamp_unit(it.gap / (l_ * it.d_norm_sq));
    return {alpha, it.x + alpha * it.d, 0};
  }

 private:
  double l_;
};

class AdaptiveClassicRule {
 public:
  AdaptiveClassicRule(const Objective& objective, double l_init, std::size_t max_doublings)
      : objective_(objective), l_(l_init), max_doublings_(max_doublings) {}

  void describe(IterateRecord& r) const {
    r.a_k = l_;
    r.l0_k = l_;
    r.l1_k = 0.0;
  }

  RuleStep step(const IterateView& it, IterateRecord& r) {
    l_ = std::max(0.5 * l_, kParamFloor);
    for (std::size_t checks = 1;; ++checks) {
      const double alpha = clamp_unit(it.gap / (l_ * it.d_norm_sq));
      Vector next = it.x + alpha * it.d;
      const double f_next = objective_.value(next);
      const double rhs = it.f - alpha * it.gap + 0.5 * l_ * alpha * alpha * it.d_norm_sq;
      if (f_next <= rhs + slack_for(it.f)) {
        describe(r);
        return {alpha, std::move(next), checks};
      }
      if (checks > max_doublings_) {
        throw SolverError("adaptive classic FW: no acceptable L after " +
                          std::to_string(max_doublings_) + " doublings at iteration " +
                          std::to_string(r.iter));
      }
      l_ *= 2.0;
    }
  }

 private:
  const Objective& objective_;
  double l_;
  std::size_t max_doublings_;
};

class L0L1Rule {
 public:
  explicit L0L1Rule(SmoothnessParams params) : params_(params) {}

  void describe(IterateRecord& r) const {
    r.a_k = params_.l0 + params_.l1 * r.grad_norm;
    r.l0_k = params_.l0;
    r.l1_k = params_.l1;
  }

  RuleStep step(const IterateView& it, IterateRecord& r) const {
    const double alpha = clamp_unit(it.gap / (r.a_k * it.d_norm_sq * kE));
    return {alpha, it.x + alpha * it.d, 0};
  }

 private:
  SmoothnessParams params_;
};

class AdaptL0L1Rule {
 public:
  AdaptL0L1Rule(const Objective& objective, AdaptiveState state, std::size_t inner_cap,
                SurrogateForm form)
      : objective_(objective), state_(state), inner_cap_(inner_cap), form_(form) {}

  void describe(IterateRecord& r) const {
    r.a_k = state_.l0_k + state_.l1_k * r.grad_norm;
    r.l0_k = state_.l0_k;
    r.l1_k = state_.l1_k;
  }

  RuleStep step(const IterateView& it, IterateRecord& r) {
    double& l0 = state_.l0_k;
    double& l1 = state_.l1_k;
    const double gn = it.grad_norm;
    const double rho = state_.rho;

    // Both parameters shrink at once, each in proportion to its share of a_k.
    const double a_before = l0 + l1 * gn;
    if (a_before > 0.0) {
      const double l0_share = l0 / a_before;
      const double l1_share = l1 * gn / a_before;
      l0 = std::max(l0 / (rho + l0_share), kParamFloor);
      l1 = std::max(l1 / (rho + l1_share), kParamFloor);
    }

    for (std::size_t checks = 1;; ++checks) {
      const double a = l0 + l1 * gn;
      const double alpha = clamp_unit(it.gap / (a * it.d_norm_sq * kE));
      Vector next = it.x + alpha * it.d;
      const double f_next = objective_.value(next);
      const double quad = 0.5 * a * alpha * alpha * it.d_norm_sq;
      const double growth = form_ == SurrogateForm::e_scaled
                                ? kE
                                : std::exp(alpha * l1 * std::sqrt(it.d_norm_sq));
      const double rhs = it.f - alpha * it.gap + growth * quad;
      if (f_next <= rhs + slack_for(it.f)) {
        describe(r);
        return {alpha, std::move(next), checks};
      }
      if (checks >= inner_cap_) {
        throw SolverError("adaptive (L0,L1) FW: step not accepted after " +
                          std::to_string(inner_cap_) + " checks at iteration " +
                          std::to_string(r.iter) +
                          " (inconsistent oracle or L0/L1 maxima too small)");
      }
      // Multiply one parameter per failed check, alternating between them.
      if (!state_.toggle) {
        l0 = std::clamp(l0 * (rho - l0 / a), kParamFloor, state_.l0_max);
        state_.toggle = true;
      } else {
        l1 = std::clamp(l1 * (rho - l1 * gn / a), kParamFloor, state_.l1_max);
        state_.toggle = false;
      }
    }
  }

 private:
  const Objective& objective_;
  AdaptiveState state_;
  std::size_t inner_cap_;
  SurrogateForm form_;
};

}  // namespace

Trace run_classic_fw(const Problem& problem, const SolverConfig& config) {
  problem.validate();
  std::optional<double> l = config.classic_l;
  if (!l) l = problem.objective->smoothness().classic_l;
  if (!l) throw SolverError("classic FW requires a classical smoothness constant L");
  ClassicRule rule(*l);
  return run_skeleton(problem, config, rule);
}

Trace run_adaptive_classic_fw(const Problem& problem, const SolverConfig& config) {
  problem.validate();
  AdaptiveClassicRule rule(*problem.objective, config.l_init, config.max_doublings);
  return run_skeleton(problem, config, rule);
}

Trace run_l0l1_fw(const Problem& problem, const SolverConfig& config) {
  problem.validate();
  const SmoothnessParams params =
      config.smoothness ? *config.smoothness : problem.objective->smoothness();
  L0L1Rule rule(params);
  return run_skeleton(problem, config, rule);
}

Trace run_adapt_l0l1_fw(const Problem& problem, const SolverConfig& config) {
  problem.validate();
  AdaptiveState state{config.l0_init, config.l1_init, config.l0_max,
                      config.l1_max,  config.rho,     false};
  state.validate();
  AdaptL0L1Rule rule(*problem.objective, state, config.inner_cap, config.surrogate);
  return run_skeleton(problem, config, rule);
}

Trace run_solver(SolverKind kind, const Problem& problem, const SolverConfig& config) {
  switch (kind) {
    case SolverKind::classic: return run_classic_fw(problem, config);
    case SolverKind::adaptive_classic: return run_adaptive_classic_fw(problem, config);
    case SolverKind::l0l1: return run_l0l1_fw(problem, config);
    case SolverKind::adapt_l0l1: return run_adapt_l0l1_fw(problem, config);
  }
  throw std::invalid_argument("unknown solver kind");
}

}  // namespace l0l1fw
