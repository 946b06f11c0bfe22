#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "csrbf/kernels.hpp"

namespace csrbf {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

/// 2x2 Jacobian, row k = gradient of output component k.
struct Matrix2 {
  double xx = 1.0, xy = 0.0;
  double yx = 0.0, yy = 1.0;

  double det() const noexcept { return xx * yy - xy * yx; }
};

/// Paired source/target landmarks. Construction validates: equal, nonzero
/// lengths; finite coordinates; pairwise distinct sources.
class LandmarkCorrespondence {
 public:
  LandmarkCorrespondence(std::vector<Point2> source, std::vector<Point2> target);

  const std::vector<Point2>& source() const noexcept { return source_; }
  const std::vector<Point2>& target() const noexcept { return target_; }
  std::size_t size() const noexcept { return source_.size(); }

  /// Correspondence with source and target swapped (backward mapping).
  LandmarkCorrespondence reversed() const;
  /// max_j max(|tx - sx|, |ty - sy|).
  double max_shift() const;

 private:
  std::vector<Point2> source_;
  std::vector<Point2> target_;
};

/// H(x) = x + sum_j coeff_j * Phi(|x - center_j|).
class Transformation {
 public:
  Transformation(Kernel kernel, std::vector<Point2> centers, std::vector<Point2> coefficients);

  const Kernel& kernel() const noexcept { return kernel_; }
  const std::vector<Point2>& centers() const noexcept { return centers_; }
  /// Per-center displacement weights (x component, y component).
  const std::vector<Point2>& coefficients() const noexcept { return coefficients_; }

  Point2 evaluate(Point2 x) const;
  Matrix2 jacobian(Point2 x) const;

 private:
  Kernel kernel_;
  std::vector<Point2> centers_;
  std::vector<Point2> coefficients_;
};

/// Solves the two SPD interpolation systems by Cholesky factorisation.
/// Throws ConditioningError if the matrix is not numerically positive
/// definite (pivot() names the failing landmark) or the residual bound
/// |A a - d|_inf <= 1e-10 (1 + |d|_inf) cannot be met.
Transformation fit(const Kernel& kernel, const LandmarkCorrespondence& landmarks);

/// Interpolation matrix A_ij = Phi(|x_i - x_j|), row-major.
std::vector<double> interpolation_matrix(const Kernel& kernel, std::span<const Point2> centers);

struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
};

/// Jacobian determinant sampled on an nx x ny lattice including the region
/// corners. Storage is row-major in y: values[j * nx + i] is node
/// (x0 + i * dx, y0 + j * dy).
struct JacobianField {
  Rect region;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> values;
  double min_det = 0.0;
  Point2 argmin;
  double negative_fraction = 0.0;

  double at(std::size_t i, std::size_t j) const { return values[j * nx + i]; }
  Point2 node(std::size_t i, std::size_t j) const;
};

/// Throws InputError for nx < 2, ny < 2 or a zero-area region.
JacobianField det_field(const Transformation& t, const Rect& region, std::size_t nx, std::size_t ny);

}  // namespace csrbf
