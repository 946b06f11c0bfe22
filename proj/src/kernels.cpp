#include "csrbf/kernels.hpp"

#include <cmath>
#include <cstdio>

#include "csrbf/errors.hpp"

namespace csrbf {
namespace {

// t^p for t >= 0. Integer and half-integer exponents avoid std::pow so that
// the named instances are exact at the support boundary.
double truncated_pow(double t, double p) {
  t = t > 0.0 ? t : 0.0;
  const double twice = 2.0 * p;
  if (twice == std::floor(twice) && twice >= 0.0 && twice < 64.0) {
    const int whole = static_cast<int>(std::floor(p));
    double out = 1.0;
    for (int i = 0; i < whole; ++i) out *= t;
    if (p != static_cast<double>(whole)) out *= std::sqrt(t);
    return out;
  }
  return std::pow(t, p);
}

}  // namespace

KernelFamily KernelFamily::gneiting(double l) {
  if (!std::isfinite(l) || l < 3.5) {
    throw DomainError("Gneiting exponent must satisfy l >= 7/2, got " + std::to_string(l));
  }
  return KernelFamily(Tag::Gneiting, l);
}

std::string KernelFamily::name() const {
  switch (tag_) {
    case Tag::Wendland31:
      return "wendland";
    case Tag::Wu12:
      return "wu";
    case Tag::Gneiting:
      break;
  }
  if (l_ == 3.5) return "gneiting-7-2";
  if (l_ == 5.0) return "gneiting-5";
  char buf[64];
  std::snprintf(buf, sizeof buf, "gneiting-%g", l_);
  return buf;
}

KernelFamily parse_family(std::string_view name, double gneiting_l) {
  if (name == "wendland") return KernelFamily::wendland31();
  if (name == "wu") return KernelFamily::wu12();
  if (name == "gneiting-7-2") return KernelFamily::gneiting_seven_halves();
  if (name == "gneiting-5") return KernelFamily::gneiting_five();
  if (name == "gneiting") return KernelFamily::gneiting(gneiting_l);
  throw DomainError("unknown kernel family '" + std::string(name) + "'");
}

KernelFamily named_family(int index) {
  switch (index) {
    case 0:
      return KernelFamily::wendland31();
    case 1:
      return KernelFamily::wu12();
    case 2:
      return KernelFamily::gneiting_seven_halves();
    case 3:
      return KernelFamily::gneiting_five();
    default:
      throw DomainError("named family index out of range");
  }
}

Kernel::Kernel(KernelFamily family, double support) : family_(family), c_(support) {
  if (!std::isfinite(support) || support <= 0.0) {
    throw DomainError("support size must be positive and finite");
  }
}

double profile_value(const KernelFamily& family, double s) {
  if (s >= 1.0) return 0.0;
  const double t = 1.0 - s;
  switch (family.tag()) {
    case KernelFamily::Tag::Wendland31: {
      const double t2 = t * t;
      return t2 * t2 * (4.0 * s + 1.0);
    }
    case KernelFamily::Tag::Wu12: {
      const double t2 = t * t;
      return t2 * t2 * (1.0 + s * (4.0 + s * (3.0 + 0.75 * s)));
    }
    case KernelFamily::Tag::Gneiting: {
      const double l = family.exponent();
      const double k = 0.5 * (l + 1.0) * (l + 4.0);
      return truncated_pow(t, l) * (1.0 + l * s - k * s * s);
    }
  }
  return 0.0;
}

double profile_deriv(const KernelFamily& family, double s) {
  if (s >= 1.0) return 0.0;
  const double t = 1.0 - s;
  switch (family.tag()) {
    case KernelFamily::Tag::Wendland31:
      return -20.0 * s * t * t * t;
    case KernelFamily::Tag::Wu12:
      return -1.75 * s * t * t * t * (8.0 + s * (9.0 + 3.0 * s));
    case KernelFamily::Tag::Gneiting: {
      const double l = family.exponent();
      const double b = 0.5 * (l + 1.0) * (l + 2.0);
      return -b * s * truncated_pow(t, l - 1.0) * (4.0 - (l + 4.0) * s);
    }
  }
  return 0.0;
}

double profile_deriv2(const KernelFamily& family, double s) {
  if (s >= 1.0) return 0.0;
  const double t = 1.0 - s;
  switch (family.tag()) {
    case KernelFamily::Tag::Wendland31:
      return -20.0 * t * t * (1.0 - 4.0 * s);
    case KernelFamily::Tag::Wu12:
      return -1.75 * t * t * (8.0 - s * (14.0 + s * (36.0 + 18.0 * s)));
    case KernelFamily::Tag::Gneiting: {
      const double l = family.exponent();
      const double b = 0.5 * (l + 1.0) * (l + 2.0);
      const double quad = (l + 1.0) * (l + 4.0) * s * s - (6.0 * l + 8.0) * s + 4.0;
      return -b * truncated_pow(t, l - 2.0) * quad;
    }
  }
  return 0.0;
}

double kernel_value(const Kernel& k, double r) {
  return profile_value(k.family(), r / k.support());
}

double kernel_deriv(const Kernel& k, double r) {
  return profile_deriv(k.family(), r / k.support()) / k.support();
}

double kernel_deriv2(const Kernel& k, double r) {
  const double c = k.support();
  return profile_deriv2(k.family(), r / c) / (c * c);
}

double turning_bands_reference(double l, double s) {
  if (!std::isfinite(l) || l < 3.5) throw DomainError("turning bands requires l >= 7/2");
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("turning bands requires s in [0, 1]");
  // Base function on R^4 and its derivative.
  const double t = 1.0 - s;
  const double base = std::pow(t, l + 1.0) * ((l + 1.0) * s + 1.0);
  const double base_deriv = -(l + 1.0) * (l + 2.0) * s * std::pow(t, l);
  constexpr double m = 4.0;
  return base + s * base_deriv / (m - 2.0);
}

TaylorApprox taylor_approx(const KernelFamily& family) {
  if (family.is_gneiting_seven_halves()) return {-99.0 / 4.0, 1155.0 / 16.0};
  if (family.is_gneiting_five()) return {-42.0, 175.0};
  throw DomainError("no Taylor expansion for family " + family.name());
}

double taylor_value(const KernelFamily& family, double s) {
  const TaylorApprox a = taylor_approx(family);
  return 1.0 + s * s * (a.a2 + a.a3 * s);
}

}  // namespace csrbf
