#pragma once

#include <string>
#include <string_view>

namespace csrbf {

/// One of the compactly supported radial basis functions used for
/// landmark registration. Gneiting's family is parameterised by its
/// exponent l (strictly positive definite on R^2 for l >= 7/2).
class KernelFamily {
 public:
  enum class Tag { Wendland31, Wu12, Gneiting };

  static KernelFamily wendland31() { return KernelFamily(Tag::Wendland31, 0.0); }
  static KernelFamily wu12() { return KernelFamily(Tag::Wu12, 0.0); }
  /// Throws DomainError when l < 7/2 or l is not finite.
  static KernelFamily gneiting(double l);
  static KernelFamily gneiting_seven_halves() { return gneiting(3.5); }
  static KernelFamily gneiting_five() { return gneiting(5.0); }

  Tag tag() const noexcept { return tag_; }
  /// Gneiting exponent; 0 for the other families.
  double exponent() const noexcept { return l_; }

  bool is_gneiting_seven_halves() const noexcept { return tag_ == Tag::Gneiting && l_ == 3.5; }
  bool is_gneiting_five() const noexcept { return tag_ == Tag::Gneiting && l_ == 5.0; }

  /// CLI spelling: wendland, wu, gneiting-7-2, gneiting-5, gneiting-<l>.
  std::string name() const;

  friend bool operator==(const KernelFamily&, const KernelFamily&) = default;

 private:
  KernelFamily(Tag tag, double l) : tag_(tag), l_(l) {}

  Tag tag_;
  double l_;
};

/// Parses a CLI family name. "gneiting" requires an explicit exponent.
/// Throws DomainError on unknown names.
KernelFamily parse_family(std::string_view name, double gneiting_l = 0.0);

/// The four families compared throughout the project, in table order.
inline constexpr int kNamedFamilyCount = 4;
KernelFamily named_family(int index);

/// A kernel family with a support radius c > 0.
class Kernel {
 public:
  /// Throws DomainError unless c is finite and positive.
  Kernel(KernelFamily family, double support);

  const KernelFamily& family() const noexcept { return family_; }
  double support() const noexcept { return c_; }

 private:
  KernelFamily family_;
  double c_;
};

// Normalised profiles in s = r/c. All vanish for s >= 1.
double profile_value(const KernelFamily& family, double s);
double profile_deriv(const KernelFamily& family, double s);
double profile_deriv2(const KernelFamily& family, double s);

/// Phi(r) for r >= 0.
double kernel_value(const Kernel& k, double r);
/// dPhi/dr for r >= 0; zero at r = 0 and for r >= c.
double kernel_deriv(const Kernel& k, double r);
/// d^2Phi/dr^2 for r >= 0.
double kernel_deriv2(const Kernel& k, double r);

/// Applies the m = 4 -> 2 turning-bands step to (1-s)_+^{l+1}((l+1)s+1).
/// Independent route to the Gneiting profile. Throws DomainError for
/// l < 7/2 or s outside [0, 1].
double turning_bands_reference(double l, double s);

/// Small-argument expansion 1 + a2 s^2 + a3 s^3 (no linear term).
struct TaylorApprox {
  double a2;
  double a3;
};

/// Defined for the two named Gneiting instances only; DomainError otherwise.
TaylorApprox taylor_approx(const KernelFamily& family);
double taylor_value(const KernelFamily& family, double s);

}  // namespace csrbf
