#include "csrbf/support_analysis.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "csrbf/errors.hpp"

namespace csrbf {
namespace {

// The slope dPhi/ds starts at 0, decreases, and has a single interior
// minimum before the first zero of the second derivative. Bracket that zero
// on a coarse grid, then bisect.
double bracketed_minimizer(const KernelFamily& family) {
  constexpr int kCoarse = 1000;
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 1; i < kCoarse; ++i) {
    const double s = static_cast<double>(i) / kCoarse;
    if (profile_deriv2(family, s) >= 0.0) {
      hi = s;
      break;
    }
    lo = s;
  }
  const auto f = [&](double s) { return profile_deriv2(family, s); };
  const auto tol = [](double a, double b) { return std::abs(b - a) < 1e-13; };
  const auto [a, b] = boost::math::tools::bisect(f, lo, hi, tol);
  return 0.5 * (a + b);
}

}  // namespace

DerivMinimum deriv_minimum(const KernelFamily& family) {
  double s = 0.0;
  if (family.tag() == KernelFamily::Tag::Wendland31) {
    s = 0.25;
  } else if (family.is_gneiting_seven_halves()) {
    s = 4.0 * (29.0 - std::sqrt(301.0)) / 270.0;
  } else if (family.is_gneiting_five()) {
    s = (19.0 - std::sqrt(145.0)) / 54.0;
  } else {
    s = bracketed_minimizer(family);
  }
  return {s, profile_deriv(family, s)};
}

SupportBound support_bound(const KernelFamily& family) {
  const DerivMinimum m = deriv_minimum(family);
  return {family, m.r_star_over_c, m.slope_min, std::numbers::sqrt2 * std::abs(m.slope_min)};
}

double min_support(const KernelFamily& family, double delta) {
  if (!std::isfinite(delta) || delta <= 0.0) throw DomainError("delta must be positive");
  return support_bound(family).c_min_over_delta * delta;
}

}  // namespace csrbf
