#pragma once

#include <utility>
#include <vector>

#include "patchcat/field.hpp"

namespace patchcat {

/// Dense univariate polynomial over a base field, coefficients stored
/// low-degree-first with no trailing zeros (the zero polynomial is empty).
class Poly {
 public:
  explicit Poly(BaseField f) : field_(f) {}
  Poly(BaseField f, std::vector<Scalar> coeffs);
  static Poly zero(BaseField f) { return Poly(f); }
  static Poly constant(Scalar c);
  static Poly one(BaseField f) { return constant(Scalar::one(f)); }
  static Poly t(BaseField f);                     // the variable
  static Poly t_power(BaseField f, std::size_t k);

  BaseField field() const { return field_; }
  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(std::size_t i) const;
  Scalar leading() const;  // throws on zero
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !is_zero() && leading().is_one(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(const Scalar& c) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Euclidean division by a nonzero divisor: returns (quotient, remainder).
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly monic() const;  // zero stays zero

  Scalar eval(const Scalar& x) const;
  /// Multiplies by t^k (k >= 0).
  Poly shifted(std::size_t k) const;
  /// Largest k with t^k dividing this; 0 for the zero polynomial.
  std::size_t t_valuation() const;

  /// Deterministic ordering for generator sorting: by degree, then
  /// coefficients from the top down.
  static int compare(const Poly& a, const Poly& b);

 private:
  BaseField field_;
  std::vector<Scalar> c_;
  void normalize();
};

/// Monic gcd; gcd(0,0) = 0.
Poly poly_gcd(Poly a, Poly b);

/// Extended gcd: g = s*a + t*b with g monic (or zero).
struct PolyExtGcd {
  Poly g, s, t;
};
PolyExtGcd poly_ext_gcd(const Poly& a, const Poly& b);

}  // namespace patchcat
