#pragma once

#include "csrbf/kernels.hpp"

namespace csrbf {

/// Location and value of the most negative radial slope of a unit-support
/// kernel, and the resulting one-landmark support bound.
struct SupportBound {
  KernelFamily family;
  double r_star_over_c;     ///< argmin of dPhi/dr on (0, 1) at c = 1
  double slope_min;         ///< dPhi/dr at r_star_over_c, c = 1 (negative)
  double c_min_over_delta;  ///< sqrt(2) * |slope_min|
};

struct DerivMinimum {
  double r_star_over_c;
  double slope_min;
};

/// Closed forms for Wendland31 and the two named Gneiting instances;
/// bracketed root search on the second derivative for the rest.
DerivMinimum deriv_minimum(const KernelFamily& family);

SupportBound support_bound(const KernelFamily& family);

/// Infimum of support sizes c for which delta * dPhi/dr > -1/sqrt(2) holds
/// everywhere. delta is max(|dx|, |dy|) of the landmark shift.
/// Throws DomainError for delta <= 0.
double min_support(const KernelFamily& family, double delta);

}  // namespace csrbf
