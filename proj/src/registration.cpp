#include "csrbf/registration.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "csrbf/errors.hpp"
#include "csrbf/parallel.hpp"

namespace csrbf {
namespace {

constexpr double kZeroDistance = 1e-14;

bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// residual = rhs - A * sol, both n x 2 row-major.
std::vector<double> residual(std::span<const double> a, std::span<const double> sol,
                             std::span<const double> rhs, std::size_t n) {
  std::vector<double> out(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out[2 * i] -= a[i * n + j] * sol[2 * j];
      out[2 * i + 1] -= a[i * n + j] * sol[2 * j + 1];
    }
  }
  return out;
}

}  // namespace

LandmarkCorrespondence::LandmarkCorrespondence(std::vector<Point2> source, std::vector<Point2> target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_.empty()) throw InputError("at least one landmark pair is required");
  if (source_.size() != target_.size()) {
    throw InputError("source and target landmark counts differ (" + std::to_string(source_.size()) +
                     " vs " + std::to_string(target_.size()) + ")");
  }
  for (std::size_t i = 0; i < source_.size(); ++i) {
    if (!finite(source_[i]) || !finite(target_[i])) {
      throw InputError("landmark " + std::to_string(i) + " has a non-finite coordinate");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (source_[i] == source_[j]) {
        throw InputError("duplicate source landmarks " + std::to_string(j) + " and " +
                         std::to_string(i));
      }
    }
  }
}

LandmarkCorrespondence LandmarkCorrespondence::reversed() const {
  return LandmarkCorrespondence(target_, source_);
}

double LandmarkCorrespondence::max_shift() const {
  double m = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    m = std::max({m, std::abs(target_[i].x - source_[i].x), std::abs(target_[i].y - source_[i].y)});
  }
  return m;
}

Transformation::Transformation(Kernel kernel, std::vector<Point2> centers, std::vector<Point2> coefficients)
    : kernel_(kernel), centers_(std::move(centers)), coefficients_(std::move(coefficients)) {
  if (centers_.size() != coefficients_.size()) {
    throw InputError("center and coefficient counts differ");
  }
}

Point2 Transformation::evaluate(Point2 x) const {
  const double c2 = kernel_.support() * kernel_.support();
  double dx = 0.0;
  double dy = 0.0;
  for (std::size_t j = 0; j < centers_.size(); ++j) {
    const double ux = x.x - centers_[j].x;
    const double uy = x.y - centers_[j].y;
    const double r2 = ux * ux + uy * uy;
    if (r2 >= c2) continue;
    const double phi = kernel_value(kernel_, std::sqrt(r2));
    dx += coefficients_[j].x * phi;
    dy += coefficients_[j].y * phi;
  }
  return {x.x + dx, x.y + dy};
}

Matrix2 Transformation::jacobian(Point2 x) const {
  const double c2 = kernel_.support() * kernel_.support();
  Matrix2 jac;
  for (std::size_t j = 0; j < centers_.size(); ++j) {
    const double ux = x.x - centers_[j].x;
    const double uy = x.y - centers_[j].y;
    const double r2 = ux * ux + uy * uy;
    if (r2 >= c2) continue;
    const double r = std::sqrt(r2);
    if (r < kZeroDistance) continue;  // kernel_deriv(0) = 0
    const double g = kernel_deriv(kernel_, r) / r;
    const double gx = g * ux;
    const double gy = g * uy;
    jac.xx += coefficients_[j].x * gx;
    jac.xy += coefficients_[j].x * gy;
    jac.yx += coefficients_[j].y * gx;
    jac.yy += coefficients_[j].y * gy;
  }
  return jac;
}

std::vector<double> interpolation_matrix(const Kernel& kernel, std::span<const Point2> centers) {
  const std::size_t n = centers.size();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i * n + i] = kernel_value(kernel, 0.0);
    for (std::size_t j = 0; j < i; ++j) {
      const double r = std::hypot(centers[i].x - centers[j].x, centers[i].y - centers[j].y);
      a[i * n + j] = a[j * n + i] = kernel_value(kernel, r);
    }
  }
  return a;
}

Transformation fit(const Kernel& kernel, const LandmarkCorrespondence& landmarks) {
  const auto& src = landmarks.source();
  const auto& dst = landmarks.target();
  const std::size_t n = src.size();
  const lapack_int ln = static_cast<lapack_int>(n);

  const std::vector<double> a = interpolation_matrix(kernel, src);
  std::vector<double> rhs(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    rhs[2 * i] = dst[i].x - src[i].x;
    rhs[2 * i + 1] = dst[i].y - src[i].y;
  }

  std::vector<double> factor = a;
  const lapack_int info = LAPACKE_dpotrf(LAPACK_ROW_MAJOR, 'L', ln, factor.data(), ln);
  if (info > 0) {
    const auto pivot = static_cast<std::size_t>(info - 1);
    throw ConditioningError("interpolation matrix is not positive definite at pivot " +
                                std::to_string(pivot) + " (landmarks too close relative to support " +
                                std::to_string(kernel.support()) + ")",
                            pivot);
  }

  std::vector<double> sol = rhs;
  LAPACKE_dpotrs(LAPACK_ROW_MAJOR, 'L', ln, 2, factor.data(), ln, sol.data(), 2);

  const double bound = 1e-10 * (1.0 + inf_norm(rhs));
  std::vector<double> res = residual(a, sol, rhs, n);
  for (int step = 0; step < 3 && inf_norm(res) > bound; ++step) {
    LAPACKE_dpotrs(LAPACK_ROW_MAJOR, 'L', ln, 2, factor.data(), ln, res.data(), 2);
    for (std::size_t i = 0; i < sol.size(); ++i) sol[i] += res[i];
    res = residual(a, sol, rhs, n);
  }
  if (!(inf_norm(res) <= bound)) {
    const auto worst = static_cast<std::size_t>(
        std::max_element(res.begin(), res.end(), [](double p, double q) { return std::abs(p) < std::abs(q); }) -
        res.begin());
    throw ConditioningError("interpolation residual exceeds tolerance at landmark " +
                                std::to_string(worst / 2),
                            worst / 2);
  }

  std::vector<Point2> coeffs(n);
  for (std::size_t i = 0; i < n; ++i) coeffs[i] = {sol[2 * i], sol[2 * i + 1]};
  return Transformation(kernel, src, std::move(coeffs));
}

Point2 JacobianField::node(std::size_t i, std::size_t j) const {
  const double fx = static_cast<double>(i) / static_cast<double>(nx - 1);
  const double fy = static_cast<double>(j) / static_cast<double>(ny - 1);
  return {region.x0 + fx * (region.x1 - region.x0), region.y0 + fy * (region.y1 - region.y0)};
}

JacobianField det_field(const Transformation& t, const Rect& region, std::size_t nx, std::size_t ny) {
  if (nx < 2 || ny < 2) throw InputError("det field resolution must be at least 2x2");
  if (!(region.x1 != region.x0 && region.y1 != region.y0) ||
      !std::isfinite((region.x1 - region.x0) * (region.y1 - region.y0))) {
    throw InputError("det field region has zero area");
  }

  JacobianField field;
  field.region = region;
  field.nx = nx;
  field.ny = ny;
  field.values.resize(nx * ny);
  parallel_rows(ny, [&](std::size_t j) {
    for (std::size_t i = 0; i < nx; ++i) {
      field.values[j * nx + i] = t.jacobian(field.node(i, j)).det();
    }
  });

  std::size_t best = 0;
  std::size_t negatives = 0;
  for (std::size_t k = 0; k < field.values.size(); ++k) {
    if (field.values[k] < field.values[best]) best = k;
    if (field.values[k] < 0.0) ++negatives;
  }
  field.min_det = field.values[best];
  field.argmin = field.node(best % nx, best / nx);
  field.negative_fraction = static_cast<double>(negatives) / static_cast<double>(field.values.size());
  return field;
}

}  // namespace csrbf
