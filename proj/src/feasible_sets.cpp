#include "l0l1fw/feasible_sets.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace l0l1fw {

void FeasibleSet::check_dimension(const Vector& v) const {
  if (static_cast<std::size_t>(v.size()) != dimension()) {
    throw std::invalid_argument(name() + ": expected vector of dimension " +
                                std::to_string(dimension()) + ", got " +
                                std::to_string(v.size()));
  }
}

// ---------------------------------------------------------------------------

L2Ball::L2Ball(Vector center, double radius) : center_(std::move(center)), radius_(radius) {
  if (center_.size() == 0) throw std::invalid_argument("l2ball: empty center");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("l2ball: radius must be positive");
  }
}

Vector L2Ball::lmo(const Vector& g) const {
  check_dimension(g);
  const double norm = g.norm();
  if (norm == 0.0) throw std::invalid_argument("l2ball: LMO undefined for zero gradient");
  return center_ - (radius_ / norm) * g;
}

bool L2Ball::contains(const Vector& x, double tol) const {
  check_dimension(x);
  return (x - center_).norm() <= radius_ + tol;
}

// ---------------------------------------------------------------------------

Simplex::Simplex(std::size_t dimension, double scale) : dim_(dimension), scale_(scale) {
  if (dimension == 0) throw std::invalid_argument("simplex: dimension must be >= 1");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("simplex: scale must be positive");
  }
}

Vector Simplex::lmo(const Vector& g) const {
  check_dimension(g);
  Eigen::Index best = 0;
  for (Eigen::Index j = 1; j < g.size(); ++j) {
    if (g[j] < g[best]) best = j;
  }
  Vector s = Vector::Zero(g.size());
  s[best] = scale_;
  return s;
}

double Simplex::diameter() const {
  return dim_ == 1 ? 0.0 : scale_ * std::sqrt(2.0);
}

bool Simplex::contains(const Vector& x, double tol) const {
  check_dimension(x);
  if (x.minCoeff() < -tol) return false;
  return std::abs(x.sum() - scale_) <= tol * std::max(1.0, scale_);
}

Vector Simplex::center() const {
  return Vector::Constant(static_cast<Eigen::Index>(dim_), scale_ / static_cast<double>(dim_));
}

// ---------------------------------------------------------------------------

LInfBall::LInfBall(Vector center, double radius) : center_(std::move(center)), radius_(radius) {
  if (center_.size() == 0) throw std::invalid_argument("linf_ball: empty center");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("linf_ball: radius must be positive");
  }
}

Vector LInfBall::lmo(const Vector& g) const {
  check_dimension(g);
  Vector s(g.size());
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    s[j] = center_[j] - (g[j] >= 0.0 ? radius_ : -radius_);
  }
  return s;
}

double LInfBall::diameter() const {
  return 2.0 * radius_ * std::sqrt(static_cast<double>(center_.size()));
}

bool LInfBall::contains(const Vector& x, double tol) const {
  check_dimension(x);
  return (x - center_).cwiseAbs().maxCoeff() <= radius_ + tol;
}

// ---------------------------------------------------------------------------

Ellipsoid::Ellipsoid(Vector center, Matrix shape)
    : center_(std::move(center)), shape_(std::move(shape)) {
  if (center_.size() == 0 || shape_.rows() != center_.size() ||
      shape_.cols() != center_.size()) {
    throw std::invalid_argument("ellipsoid: shape matrix must be d x d");
  }
  const double scale = std::max(1.0, shape_.cwiseAbs().maxCoeff());
  if ((shape_ - shape_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("ellipsoid: shape matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(shape_, Eigen::EigenvaluesOnly);
  lambda_min_ = eig.eigenvalues().minCoeff();
  lambda_max_ = eig.eigenvalues().maxCoeff();
  if (!(lambda_min_ > 0.0)) {
    throw std::invalid_argument("ellipsoid: shape matrix is not positive definite");
  }
  factor_.compute(shape_);
}

Vector Ellipsoid::lmo(const Vector& g) const {
  check_dimension(g);
  if (g.norm() == 0.0) throw std::invalid_argument("ellipsoid: LMO undefined for zero gradient");
  const Vector w = factor_.solve(g);
  return center_ - w / std::sqrt(g.dot(w));
}

double Ellipsoid::diameter() const { return 2.0 / std::sqrt(lambda_min_); }

bool Ellipsoid::contains(const Vector& x, double tol) const {
  check_dimension(x);
  const Vector u = x - center_;
  return u.dot(shape_ * u) <= 1.0 + tol;
}

std::optional<double> Ellipsoid::strong_convexity() const {
  return lambda_min_ / (8.0 * std::sqrt(lambda_max_));
}

}  // namespace l0l1fw
