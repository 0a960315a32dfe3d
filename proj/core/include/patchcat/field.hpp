#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "patchcat/errors.hpp"

namespace patchcat {

/// A base field: Q when p == 0, otherwise the prime field F_p (p < 2^31).
struct BaseField {
  std::uint32_t p = 0;

  bool is_rationals() const { return p == 0; }
  bool operator==(const BaseField&) const = default;
  std::string to_string() const { return p == 0 ? "Q" : "F" + std::to_string(p); }
};

BaseField rationals_field();
BaseField prime_field(std::uint32_t p);  // throws UnsupportedRing if p is not prime

/// Element of a base field. F_p values are reduced residues; Q values are
/// canonical GMP rationals. Arithmetic requires matching fields.
class Scalar {
 public:
  Scalar() = default;
  Scalar(BaseField f, long value);
  static Scalar zero(BaseField f) { return Scalar(f, 0); }
  static Scalar one(BaseField f) { return Scalar(f, 1); }
  static Scalar from_rational(const mpq_class& q);
  static Scalar from_residue(BaseField f, std::uint64_t r);

  BaseField field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;  // throws NotAUnit on zero
  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::uint64_t residue() const { return r_; }    // F_p only
  const mpq_class& rational() const { return q_; }  // Q only

  /// Decimal form: "c" or "a/b"; exact, used by the JSON codecs.
  std::string to_string() const;
  static Scalar parse(BaseField f, const std::string& text);  // throws ParseError

  /// Total order used only for deterministic tie-breaking, not algebra.
  static int compare(const Scalar& a, const Scalar& b);

 private:
  BaseField field_{};
  std::uint64_t r_ = 0;
  mpq_class q_ = 0;
  void check_same(const Scalar& o) const;
};

}  // namespace patchcat
