#include "l0l1fw/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace l0l1fw {

SmoothnessParams SmoothnessParams::make(double l0, double l1,
                                        std::optional<double> classic_l) {
  SmoothnessParams params{l0, l1, classic_l};
  params.validate();
  return params;
}

void SmoothnessParams::validate() const {
  if (!(l0 >= 0.0) || !(l1 >= 0.0) || !std::isfinite(l0) || !std::isfinite(l1)) {
    throw std::invalid_argument("smoothness constants must be finite and >= 0");
  }
  if (l0 == 0.0 && l1 == 0.0) {
    throw std::invalid_argument("smoothness constants L0 and L1 are both zero");
  }
  if (classic_l && !(*classic_l > 0.0)) {
    throw std::invalid_argument("classical smoothness constant must be > 0");
  }
}

void AdaptiveState::validate() const {
  if (!(l0_k > 0.0) || !(l1_k > 0.0)) {
    throw std::invalid_argument("adaptive initial parameters must be > 0");
  }
  if (!(l0_max >= l0_k) || !(l1_max >= l1_k) || !std::isfinite(l0_max) ||
      !std::isfinite(l1_max)) {
    throw std::invalid_argument(
        "adaptive maxima must be finite and at least the initial parameters");
  }
  if (!(rho >= 1.0)) {
    throw std::invalid_argument("adaptation factor rho must be >= 1");
  }
}

std::string_view to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::gap_tol: return "gap_tol";
    case TerminationReason::max_iter: return "max_iter";
    case TerminationReason::zero_direction: return "zero_direction";
  }
  return "unknown";
}

char regime_code(Regime regime) { return regime == Regime::T ? 'T' : 'K'; }

Regime classify_regime(double l0, double l1, double grad_norm) {
  return l0 <= l1 * grad_norm ? Regime::T : Regime::K;
}

namespace {

std::optional<double> positive_or_empty(double a) {
  if (a > 0.0) return a;
  return std::nullopt;
}

}  // namespace

std::optional<double> combined_constant(const SmoothnessParams& params,
                                        double grad_norm) {
  if (!(grad_norm >= 0.0)) {
    throw std::invalid_argument("gradient norm must be >= 0");
  }
  return positive_or_empty(params.l0 + params.l1 * grad_norm);
}

std::optional<double> combined_constant(const AdaptiveState& state,
                                        double grad_norm) {
  if (!(grad_norm >= 0.0)) {
    throw std::invalid_argument("gradient norm must be >= 0");
  }
  return positive_or_empty(state.l0_k + state.l1_k * grad_norm);
}

double directional_gap(const Vector& g, const Vector& d) {
  if (g.size() != d.size()) {
    throw std::invalid_argument("directional_gap: dimension mismatch (" +
                                std::to_string(g.size()) + " vs " +
                                std::to_string(d.size()) + ")");
  }
  return -g.dot(d);
}

bool is_monotone_nonincreasing(const Trace& trace) {
  for (std::size_t k = 1; k < trace.records.size(); ++k) {
    const double prev = trace.records[k - 1].f_value;
    if (trace.records[k].f_value > prev + slack_for(prev)) return false;
  }
  return true;
}

}  // namespace l0l1fw
