#pragma once

#include <memory>
#include <optional>
#include <string>

#include <Eigen/Cholesky>

#include "l0l1fw/core.hpp"

namespace l0l1fw {

/// Compact convex set accessed through its linear minimization oracle.
/// Sets are immutable; every query is pure.
class FeasibleSet {
 public:
  virtual ~FeasibleSet() = default;

  virtual std::size_t dimension() const = 0;
  /// A point of argmin_{z in set} g^T z.
  virtual Vector lmo(const Vector& g) const = 0;
  /// max_{x, y in set} ||x - y||.
  virtual double diameter() const = 0;
  virtual bool contains(const Vector& x, double tol = 1e-9) const = 0;
  /// lambda such that every z with ||z - (x+y)/2|| <= lambda ||x-y||^2 lies
  /// in the set; empty for sets that are not strongly convex.
  virtual std::optional<double> strong_convexity() const { return std::nullopt; }
  /// Canonical interior point (centre / barycentre).
  virtual Vector center() const = 0;
  virtual std::string name() const = 0;

 protected:
  void check_dimension(const Vector& v) const;
};

/// {x : ||x - center|| <= radius}
class L2Ball final : public FeasibleSet {
 public:
  L2Ball(Vector center, double radius);

  std::size_t dimension() const override { return static_cast<std::size_t>(center_.size()); }
  /// center - radius * g / ||g||; throws on g = 0.
  Vector lmo(const Vector& g) const override;
  double diameter() const override { return 2.0 * radius_; }
  bool contains(const Vector& x, double tol = 1e-9) const override;
  /// 1 / (8 radius), from the midpoint depth r - sqrt(r^2 - delta^2/4) >= delta^2/(8r).
  std::optional<double> strong_convexity() const override { return 1.0 / (8.0 * radius_); }
  Vector center() const override { return center_; }
  std::string name() const override { return "l2ball"; }

  double radius() const { return radius_; }

 private:
  Vector center_;
  double radius_;
};

/// {x >= 0, sum x = scale}
class Simplex final : public FeasibleSet {
 public:
  explicit Simplex(std::size_t dimension, double scale = 1.0);

  std::size_t dimension() const override { return dim_; }
  /// scale * e_i, i the smallest index attaining min_j g_j.
  Vector lmo(const Vector& g) const override;
  double diameter() const override;
  bool contains(const Vector& x, double tol = 1e-9) const override;
  Vector center() const override;
  std::string name() const override { return "simplex"; }

  double scale() const { return scale_; }

 private:
  std::size_t dim_;
  double scale_;
};

/// {x : |x_j - center_j| <= radius for all j}
class LInfBall final : public FeasibleSet {
 public:
  LInfBall(Vector center, double radius);

  std::size_t dimension() const override { return static_cast<std::size_t>(center_.size()); }
  /// center_j - radius * sign(g_j) with sign(0) = +1.
  Vector lmo(const Vector& g) const override;
  double diameter() const override;
  bool contains(const Vector& x, double tol = 1e-9) const override;
  Vector center() const override { return center_; }
  std::string name() const override { return "linf_ball"; }

  double radius() const { return radius_; }

 private:
  Vector center_;
  double radius_;
};

/// {x : (x - c)^T M (x - c) <= 1}, M symmetric positive definite.
class Ellipsoid final : public FeasibleSet {
 public:
  Ellipsoid(Vector center, Matrix shape);

  std::size_t dimension() const override { return static_cast<std::size_t>(center_.size()); }
  /// center - M^{-1} g / sqrt(g^T M^{-1} g); throws on g = 0.
  Vector lmo(const Vector& g) const override;
  /// 2 / sqrt(lambda_min(M)).
  double diameter() const override;
  bool contains(const Vector& x, double tol = 1e-9) const override;
  /// lambda_min(M) / (8 sqrt(lambda_max(M))): 1/(8R) with R the largest
  /// radius of curvature of the boundary.
  std::optional<double> strong_convexity() const override;
  Vector center() const override { return center_; }
  std::string name() const override { return "ellipsoid"; }

  const Matrix& shape() const { return shape_; }

 private:
  Vector center_;
  Matrix shape_;
  Eigen::LLT<Matrix> factor_;
  double lambda_min_ = 0.0;
  double lambda_max_ = 0.0;
};

}  // namespace l0l1fw
