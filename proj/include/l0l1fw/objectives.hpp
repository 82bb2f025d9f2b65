#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "l0l1fw/core.hpp"

namespace l0l1fw {

/// Differentiable convex objective with known smoothness metadata.
/// Implementations are immutable; evaluation is thread-safe.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t dimension() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual std::pair<double, Vector> value_and_gradient(const Vector& x) const {
    return {value(x), gradient(x)};
  }
  virtual SmoothnessParams smoothness() const = 0;
  /// mu in 1/2 ||grad f||^2 >= mu (f - f*), when known analytically.
  virtual std::optional<double> pl_constant() const { return std::nullopt; }
  /// Unconstrained minimum value, when known analytically.
  virtual std::optional<double> reference_optimum() const { return std::nullopt; }
  virtual std::string name() const = 0;

 protected:
  void check_dimension(const Vector& x) const;
};

/// f(x) = (1/n) sum_i log(1 + exp(-y_i (A x)_i)) with samples as rows of A.
class LogisticRegression final : public Objective {
 public:
  /// Throws std::invalid_argument on shape mismatch or labels outside {-1, +1}.
  LogisticRegression(Matrix a, Vector labels);

  std::size_t dimension() const override { return static_cast<std::size_t>(a_.cols()); }
  std::size_t samples() const { return static_cast<std::size_t>(a_.rows()); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  std::pair<double, Vector> value_and_gradient(const Vector& x) const override;
  /// (L0 = 0, L1 = max_i ||A_i||, L = max_i ||A_i||^2). Throws
  /// std::invalid_argument for an all-zero matrix.
  SmoothnessParams smoothness() const override;
  std::string name() const override { return "logistic"; }

  const Matrix& matrix() const { return a_; }
  const Vector& labels() const { return labels_; }

 private:
  Matrix a_;
  Vector labels_;
  double max_row_norm_ = 0.0;
};

/// log(1 + exp(-m)) without overflow for any finite margin m.
double logistic_loss(double margin);

/// f(x) = exp(a^T x); (L0, L1) = (0, ||a||), not globally L-smooth.
std::shared_ptr<const Objective> exp_linear(Vector a);

/// f(x) = ||x||^n for n >= 2; (L0, L1) = (2n, 2n - 1).
std::shared_ptr<const Objective> power_norm(int n_exp, std::size_t dimension);

/// f(x) = 1/2 x^T Q x - b^T x with Q symmetric positive definite.
/// L = L0 = lambda_max(Q), mu = lambda_min(Q). L1 defaults to 0; a quadratic
/// satisfies the generalized bound for any L1 >= 0, so a positive value can
/// be declared to exercise both T and K regimes.
class Quadratic final : public Objective {
 public:
  Quadratic(Matrix q, Vector b, double l1 = 0.0);

  std::size_t dimension() const override { return static_cast<std::size_t>(b_.size()); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  SmoothnessParams smoothness() const override { return smoothness_; }
  std::optional<double> pl_constant() const override { return lambda_min_; }
  /// -1/2 b^T Q^{-1} b.
  std::optional<double> reference_optimum() const override { return optimum_; }
  std::string name() const override { return "quadratic"; }

  /// Unconstrained minimizer Q^{-1} b.
  const Vector& minimizer() const { return minimizer_; }
  const Matrix& matrix() const { return q_; }
  const Vector& linear_term() const { return b_; }

 private:
  Matrix q_;
  Vector b_;
  Vector minimizer_;
  double lambda_min_ = 0.0;
  double optimum_ = 0.0;
  SmoothnessParams smoothness_;
};

std::shared_ptr<const Quadratic> quadratic(Matrix q, Vector b, double l1 = 0.0);

}  // namespace l0l1fw
