#pragma once

#include <optional>
#include <string>

#include "patchcat/poly.hpp"

namespace patchcat {

enum class RingKind {
  prime_field,        // F_p
  rationals,          // Q
  poly,               // k[t]
  laurent,            // k[t, 1/t]
  local_at_zero,      // k[t] localized at (t): f/g with g(0) != 0
  rational_functions  // k(t)
};

std::string to_string(RingKind k);

/// Ring descriptor. `p` is the base-field characteristic (0 for Q); for
/// kind == prime_field it is the modulus itself.
struct RingDesc {
  RingKind kind = RingKind::rationals;
  std::uint32_t p = 0;

  BaseField base_field() const { return BaseField{p}; }
  bool is_base_field_kind() const {
    return kind == RingKind::prime_field || kind == RingKind::rationals;
  }
  bool is_field() const {
    return is_base_field_kind() || kind == RingKind::rational_functions;
  }
  /// Every supported kind is a PID (the four function kinds are Euclidean).
  bool operator==(const RingDesc&) const = default;
  std::string to_string() const;
};

RingDesc ring_prime_field(std::uint32_t p);
RingDesc ring_rationals();
RingDesc ring_poly(BaseField base);
RingDesc ring_laurent(BaseField base);
RingDesc ring_local_at_zero(BaseField base);
RingDesc ring_rational_functions(BaseField base);
/// The base field itself as a ring (constant matrices, coefficient solves).
RingDesc ring_scalars(BaseField base);

/// True when every element of `small` canonically belongs to `big`.
bool is_subring(const RingDesc& small, const RingDesc& big);

/// Element of one of the supported rings, stored as a reduced fraction
/// num/den of polynomials over the base field with monic denominator.
/// Kind invariants: poly and base fields have den == 1; laurent has den a
/// power of t; local_at_zero has den(0) != 0. All kinds embed in k(t).
class RingElem {
 public:
  RingElem() = default;
  static RingElem zero(const RingDesc& r);
  static RingElem one(const RingDesc& r);
  static RingElem from_int(const RingDesc& r, long n);
  static RingElem constant(const RingDesc& r, const Scalar& c);
  static RingElem t(const RingDesc& r);                  // throws for base-field kinds
  static RingElem t_power(const RingDesc& r, int k);     // k may be negative
  /// Canonicalizes and verifies membership in `r`; throws RingMismatch if
  /// the reduced fraction falls outside the ring.
  static RingElem from_fraction(const RingDesc& r, Poly num, Poly den);

  const RingDesc& ring() const { return ring_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_unit() const;

  RingElem operator+(const RingElem& o) const;
  RingElem operator-(const RingElem& o) const;
  RingElem operator*(const RingElem& o) const;
  RingElem operator-() const;
  RingElem inverse() const;  // throws NotAUnit
  bool operator==(const RingElem& o) const;
  bool operator!=(const RingElem& o) const { return !(*this == o); }

  /// Exact division; throws ShapeError when the quotient leaves the ring.
  RingElem divide_exact(const RingElem& o) const;

  /// max(deg num, deg den): the size measure used by certified degree bounds.
  int degree_size() const;

  /// t-adic valuation of the fraction (num valuation minus den valuation);
  /// throws ShapeError on zero.
  int t_valuation() const;

  /// Reinterprets this element in ring `r` (must be a supersetting ring or
  /// the fraction must satisfy r's invariants); throws RingMismatch.
  RingElem into(const RingDesc& r) const;

  std::string to_string() const;
  static int compare(const RingElem& a, const RingElem& b);

 private:
  RingDesc ring_{};
  Poly num_{BaseField{0}};
  Poly den_{BaseField{0}};
  static bool fraction_in_ring(const RingDesc& r, const Poly& num, const Poly& den);
};

/// Ring homomorphism fixing the base field: either a canonical inclusion or
/// the map determined by t |-> t_image (base-field coefficients fixed).
class RingHom {
 public:
  static RingHom inclusion(const RingDesc& source, const RingDesc& target);
  static RingHom send_t(const RingDesc& source, const RingDesc& target, RingElem t_image);

  const RingDesc& source() const { return source_; }
  const RingDesc& target() const { return target_; }
  bool is_inclusion() const { return inclusion_; }
  const RingElem& t_image() const { return t_image_; }

  RingElem apply(const RingElem& x) const;  // throws RingMismatch on bad input
  static RingHom compose(const RingHom& outer, const RingHom& inner);
  /// Semantic equality: same source/target and same image of t.
  bool operator==(const RingHom& o) const;

 private:
  RingHom() = default;
  RingDesc source_{}, target_{};
  bool inclusion_ = true;
  RingElem t_image_{};
};

}  // namespace patchcat
