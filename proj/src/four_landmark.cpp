#include "csrbf/four_landmark.hpp"

#include <cmath>
#include <numbers>

#include "csrbf/errors.hpp"

namespace csrbf {
namespace {

constexpr double kDegenerate = 1e-13;

}  // namespace

RhombusCase::RhombusCase(Kernel kernel, double delta)
    : kernel_(kernel),
      delta_(delta),
      alpha_(kernel_value(kernel, std::numbers::sqrt2)),
      beta_(kernel_value(kernel, 2.0)) {
  if (!std::isfinite(delta) || delta < 0.0) throw DomainError("rhombus shift must be >= 0");
}

std::array<Point2, 4> RhombusCase::sources() {
  return {Point2{0.0, 1.0}, Point2{-1.0, 0.0}, Point2{0.0, -1.0}, Point2{1.0, 0.0}};
}

std::array<Point2, 4> RhombusCase::targets() const {
  auto q = sources();
  q[2].y -= delta_;
  return q;
}

LandmarkCorrespondence RhombusCase::landmarks() const {
  const auto p = sources();
  const auto q = targets();
  return LandmarkCorrespondence({p.begin(), p.end()}, {q.begin(), q.end()});
}

RhombusCoefficients rhombus_coefficients(const RhombusCase& rc) {
  const double a = rc.alpha();
  const double b = rc.beta();
  const double d = rc.delta();
  const double one_minus_b = 1.0 - b;
  const double quad = (1.0 + b) * (1.0 + b) - 4.0 * a * a;
  if (std::abs(one_minus_b) < kDegenerate || std::abs(quad) < kDegenerate) {
    throw SingularConfigurationError("rhombus closed form is singular for support " +
                                     std::to_string(rc.kernel().support()));
  }
  RhombusCoefficients out;
  out.c2[0] = (b * b + b - 2.0 * a * a) * d / (one_minus_b * quad);
  out.c2[1] = a * d / quad;
  out.c2[2] = -(1.0 + b - 2.0 * a * a) * d / (one_minus_b * quad);
  out.c2[3] = out.c2[1];
  return out;
}

double axis_det(const RhombusCase& rc, double y) {
  if (!(y > 1.0)) throw DomainError("axis_det requires y > 1");
  const RhombusCoefficients coeffs = rhombus_coefficients(rc);
  const auto centers = RhombusCase::sources();
  double det = 1.0;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    const double ux = -centers[i].x;
    const double uy = y - centers[i].y;
    const double r = std::hypot(ux, uy);
    det += coeffs.c2[i] * kernel_deriv(rc.kernel(), r) * uy / r;
  }
  return det;
}

double asymptotic_axis_det(double delta, double y) {
  if (!(y > 1.0)) throw DomainError("asymptotic_axis_det requires y > 1");
  if (!(delta >= 0.0)) throw DomainError("asymptotic_axis_det requires delta >= 0");
  const double g = y * y + 1.0 - y * std::sqrt(y * y + 1.0);
  return 1.0 - kAsymptoticConstant * delta * g;
}

AsymptoticChain asymptotic_chain(const TaylorApprox& taylor) {
  constexpr double root2 = std::numbers::sqrt2;
  // alpha = Phi(sqrt2 / c), beta = Phi(2 / c): coefficients of 1/c^2, 1/c^3.
  const double alpha2 = 2.0 * taylor.a2;
  const double alpha3 = 2.0 * root2 * taylor.a3;
  const double beta2 = 4.0 * taylor.a2;
  const double beta3 = 8.0 * taylor.a3;
  // (1+beta)^2 - 4 alpha^2 = (1+beta-2alpha)(1+beta+2alpha); the 1/c^2 part of
  // the first factor cancels (beta2 = 2 alpha2), the second factor tends to 4.
  const double first_factor2 = beta2 - 2.0 * alpha2;
  const double first_factor3 = beta3 - 2.0 * alpha3;
  AsymptoticChain chain{};
  chain.leading_residual = first_factor2;
  chain.denominator_coeff = 4.0 * first_factor3 / (2.0 - root2);
  chain.deriv_quadratic = 3.0 * taylor.a3;
  // Linear derivative terms cancel across the four centers; the quadratic
  // ones add up to 2 * deriv_quadratic * (y^2 + 1 - y sqrt(y^2 + 1)) / c^3.
  chain.bracket_coeff = 2.0 * chain.deriv_quadratic;
  // c21 ~ -c^3 delta / (denominator_coeff (2 - sqrt2)).
  chain.constant = chain.bracket_coeff / (chain.denominator_coeff * (2.0 - root2));
  return chain;
}

std::vector<Figure2Row> figure2_table(std::span<const KernelFamily> families, double c, double delta,
                                      std::span<const double> y_samples) {
  std::vector<Figure2Row> rows;
  rows.reserve(families.size() * y_samples.size());
  std::vector<RhombusCase> cases;
  for (const auto& f : families) cases.emplace_back(Kernel(f, c), delta);
  for (double y : y_samples) {
    for (const auto& rc : cases) rows.push_back({y, rc.kernel().family(), axis_det(rc, y)});
  }
  return rows;
}

std::vector<double> axis_samples(std::size_t n, double y_max) {
  std::vector<double> ys(n);
  for (std::size_t k = 0; k < n; ++k) {
    ys[k] = 1.0 + static_cast<double>(k + 1) * (y_max - 1.0) / static_cast<double>(n);
  }
  return ys;
}

}  // namespace csrbf
