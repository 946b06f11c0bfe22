#pragma once

#include <array>
#include <span>
#include <vector>

#include "csrbf/kernels.hpp"
#include "csrbf/registration.hpp"

namespace csrbf {

/// Unit rhombus P = {(0,1), (-1,0), (0,-1), (1,0)} whose lower vertex is
/// pulled down by delta. alpha and beta are the kernel at the two
/// inter-landmark distances sqrt(2) and 2.
class RhombusCase {
 public:
  /// Throws DomainError unless delta >= 0 and finite (0 is the identity case).
  RhombusCase(Kernel kernel, double delta);

  const Kernel& kernel() const noexcept { return kernel_; }
  double delta() const noexcept { return delta_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  static std::array<Point2, 4> sources();
  std::array<Point2, 4> targets() const;
  LandmarkCorrespondence landmarks() const;

 private:
  Kernel kernel_;
  double delta_;
  double alpha_;
  double beta_;
};

/// Coefficients of H(x) = x + sum_i (c1[i], c2[i]) Phi(|x - P_i|).
struct RhombusCoefficients {
  std::array<double, 4> c1{};
  std::array<double, 4> c2{};
};

/// Closed-form solution of the two 4x4 systems. Throws
/// SingularConfigurationError when |1 - beta| or |(1+beta)^2 - 4 alpha^2|
/// falls below 1e-13.
RhombusCoefficients rhombus_coefficients(const RhombusCase& rc);

/// Exact det J(0, y) from the closed-form coefficients and analytic
/// kernel derivatives. Requires y > 1 (DomainError otherwise).
double axis_det(const RhombusCase& rc, double y);

/// Constant in the large-support limit det J(0,y) ~ 1 - K delta g(y).
inline constexpr double kAsymptoticConstant = 0.6402;

/// 1 - 0.6402 delta (y^2 + 1 - y sqrt(y^2 + 1)). Requires y > 1, delta >= 0.
double asymptotic_axis_det(double delta, double y);

/// Intermediate quantities of the large-support expansion for one kernel,
/// from its Taylor coefficients 1 + a2 s^2 + a3 s^3.
struct AsymptoticChain {
  double leading_residual;   ///< 1/c^2 part of 1 + beta - 2 alpha; zero for every profile
  double denominator_coeff;  ///< (1+beta)^2 - 4 alpha^2 ~ denominator_coeff (2 - sqrt2) / c^3
  double deriv_quadratic;    ///< Phi'(s) ~ 2 a2 s + deriv_quadratic s^2
  double bracket_coeff;      ///< sum of axis derivatives ~ bracket_coeff g(y) / c^3
  double constant;           ///< bracket_coeff / (denominator_coeff (2 - sqrt2))
};

AsymptoticChain asymptotic_chain(const TaylorApprox& taylor);

struct Figure2Row {
  double y;
  KernelFamily family;
  double det;
};

/// axis_det for each family at each y, ordered by y then by family.
std::vector<Figure2Row> figure2_table(std::span<const KernelFamily> families, double c, double delta,
                                      std::span<const double> y_samples);

/// n evenly spaced samples in (1, y_max]: 1 + k (y_max - 1)/n, k = 1..n.
std::vector<double> axis_samples(std::size_t n, double y_max);

}  // namespace csrbf
