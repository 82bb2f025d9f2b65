#include "l0l1fw/objectives.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace l0l1fw {

void Objective::check_dimension(const Vector& x) const {
  if (static_cast<std::size_t>(x.size()) != dimension()) {
    throw std::invalid_argument(name() + ": expected point of dimension " +
                                std::to_string(dimension()) + ", got " +
                                std::to_string(x.size()));
  }
}

// ---------------------------------------------------------------------------
// Logistic regression

double logistic_loss(double margin) {
  // softplus(-m) = log1p(exp(-|m|)) + max(-m, 0)
  return std::log1p(std::exp(-std::abs(margin))) + std::max(-margin, 0.0);
}

namespace {

// sigma(-m) = 1 / (1 + exp(m)), evaluated without overflow.
double sigmoid_of_negative(double margin) {
  if (margin >= 0.0) {
    const double t = std::exp(-margin);
    return t / (1.0 + t);
  }
  return 1.0 / (1.0 + std::exp(margin));
}

}  // namespace

LogisticRegression::LogisticRegression(Matrix a, Vector labels)
    : a_(std::move(a)), labels_(std::move(labels)) {
  if (a_.rows() == 0 || a_.cols() == 0) {
    throw std::invalid_argument("logistic: empty design matrix");
  }
  if (labels_.size() != a_.rows()) {
    throw std::invalid_argument("logistic: label count does not match rows");
  }
  for (Eigen::Index i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != 1.0 && labels_[i] != -1.0) {
      throw std::invalid_argument("logistic: labels must be -1 or +1");
    }
  }
  max_row_norm_ = a_.rowwise().norm().maxCoeff();
}

SmoothnessParams LogisticRegression::smoothness() const {
  if (!(max_row_norm_ > 0.0)) {
    throw std::invalid_argument("logistic: all-zero design matrix has no smoothness constants");
  }
  return SmoothnessParams{0.0, max_row_norm_, max_row_norm_ * max_row_norm_};
}

double LogisticRegression::value(const Vector& x) const {
  check_dimension(x);
  const Vector margins = labels_.cwiseProduct(a_ * x);
  double total = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i) total += logistic_loss(margins[i]);
  return total / static_cast<double>(margins.size());
}

Vector LogisticRegression::gradient(const Vector& x) const {
  return value_and_gradient(x).second;
}

std::pair<double, Vector> LogisticRegression::value_and_gradient(const Vector& x) const {
  check_dimension(x);
  const Vector margins = labels_.cwiseProduct(a_ * x);
  const double n = static_cast<double>(margins.size());
  double total = 0.0;
  Vector weights(margins.size());
  for (Eigen::Index i = 0; i < margins.size(); ++i) {
    total += logistic_loss(margins[i]);
    weights[i] = -labels_[i] * sigmoid_of_negative(margins[i]) / n;
  }
  return {total / n, a_.transpose() * weights};
}

// ---------------------------------------------------------------------------
// exp(a^T x)

namespace {

class ExpLinear final : public Objective {
 public:
  explicit ExpLinear(Vector a) : a_(std::move(a)) {
    if (a_.size() == 0 || a_.norm() == 0.0) {
      throw std::invalid_argument("exp_linear: direction must be nonzero");
    }
    smoothness_ = SmoothnessParams::make(0.0, a_.norm());
  }

  std::size_t dimension() const override { return static_cast<std::size_t>(a_.size()); }
  double value(const Vector& x) const override {
    check_dimension(x);
    return std::exp(a_.dot(x));
  }
  Vector gradient(const Vector& x) const override {
    check_dimension(x);
    return std::exp(a_.dot(x)) * a_;
  }
  std::pair<double, Vector> value_and_gradient(const Vector& x) const override {
    check_dimension(x);
    const double v = std::exp(a_.dot(x));
    return {v, v * a_};
  }
  SmoothnessParams smoothness() const override { return smoothness_; }
  std::string name() const override { return "exp_linear"; }

 private:
  Vector a_;
  SmoothnessParams smoothness_;
};

// ---------------------------------------------------------------------------
// ||x||^n

class PowerNorm final : public Objective {
 public:
  PowerNorm(int n_exp, std::size_t dimension) : n_(n_exp), dim_(dimension) {
    if (n_exp < 2) throw std::invalid_argument("power_norm: exponent must be >= 2");
    if (dimension == 0) throw std::invalid_argument("power_norm: dimension must be >= 1");
    smoothness_ = SmoothnessParams::make(2.0 * n_, 2.0 * n_ - 1.0);
  }

  std::size_t dimension() const override { return dim_; }
  double value(const Vector& x) const override {
    check_dimension(x);
    return std::pow(x.norm(), n_);
  }
  Vector gradient(const Vector& x) const override {
    check_dimension(x);
    const double r = x.norm();
    if (r == 0.0) return Vector::Zero(x.size());
    return (n_ * std::pow(r, n_ - 2)) * x;
  }
  SmoothnessParams smoothness() const override { return smoothness_; }
  std::string name() const override { return "power_norm" + std::to_string(n_); }

 private:
  int n_;
  std::size_t dim_;
  SmoothnessParams smoothness_;
};

}  // namespace

std::shared_ptr<const Objective> exp_linear(Vector a) {
  return std::make_shared<ExpLinear>(std::move(a));
}

std::shared_ptr<const Objective> power_norm(int n_exp, std::size_t dimension) {
  return std::make_shared<PowerNorm>(n_exp, dimension);
}

// ---------------------------------------------------------------------------
// Quadratic

Quadratic::Quadratic(Matrix q, Vector b, double l1) : q_(std::move(q)), b_(std::move(b)) {
  if (q_.rows() != q_.cols() || q_.rows() != b_.size() || b_.size() == 0) {
    throw std::invalid_argument("quadratic: Q must be d x d and b of length d");
  }
  const double scale = std::max(1.0, q_.cwiseAbs().maxCoeff());
  if ((q_ - q_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("quadratic: Q is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(q_, Eigen::EigenvaluesOnly);
  lambda_min_ = eig.eigenvalues().minCoeff();
  const double lambda_max = eig.eigenvalues().maxCoeff();
  if (!(lambda_min_ > 0.0)) {
    throw std::invalid_argument("quadratic: Q is not positive definite");
  }
  minimizer_ = q_.llt().solve(b_);
  optimum_ = -0.5 * b_.dot(minimizer_);
  smoothness_ = SmoothnessParams::make(lambda_max, l1, lambda_max);
}

double Quadratic::value(const Vector& x) const {
  check_dimension(x);
  return 0.5 * x.dot(q_ * x) - b_.dot(x);
}

Vector Quadratic::gradient(const Vector& x) const {
  check_dimension(x);
  return q_ * x - b_;
}

std::shared_ptr<const Quadratic> quadratic(Matrix q, Vector b, double l1) {
  return std::make_shared<Quadratic>(std::move(q), std::move(b), l1);
}

}  // namespace l0l1fw
