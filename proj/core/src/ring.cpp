#include "patchcat/ring.hpp"

#include <sstream>

#include "patchcat/errors.hpp"

namespace patchcat {

std::string to_string(RingKind k) {
  switch (k) {
    case RingKind::prime_field: return "prime_field";
    case RingKind::rationals: return "rationals";
    case RingKind::poly: return "poly";
    case RingKind::laurent: return "laurent";
    case RingKind::local_at_zero: return "local_at_zero";
    case RingKind::rational_functions: return "rational_functions";
  }
  return "?";
}

std::string RingDesc::to_string() const {
  std::string b = base_field().to_string();
  switch (kind) {
    case RingKind::prime_field: return b;
    case RingKind::rationals: return "Q";
    case RingKind::poly: return b + "[t]";
    case RingKind::laurent: return b + "[t,1/t]";
    case RingKind::local_at_zero: return b + "[t]_(t)";
    case RingKind::rational_functions: return b + "(t)";
  }
  return "?";
}

RingDesc ring_prime_field(std::uint32_t p) {
  return RingDesc{RingKind::prime_field, prime_field(p).p};
}
RingDesc ring_rationals() { return RingDesc{RingKind::rationals, 0}; }

namespace {
RingDesc function_ring(RingKind k, BaseField base) {
  if (base.p != 0) prime_field(base.p);  // validates primality
  return RingDesc{k, base.p};
}
}  // namespace

RingDesc ring_poly(BaseField b) { return function_ring(RingKind::poly, b); }
RingDesc ring_laurent(BaseField b) { return function_ring(RingKind::laurent, b); }
RingDesc ring_local_at_zero(BaseField b) { return function_ring(RingKind::local_at_zero, b); }
RingDesc ring_rational_functions(BaseField b) {
  return function_ring(RingKind::rational_functions, b);
}

RingDesc ring_scalars(BaseField b) {
  return b.is_rationals() ? ring_rationals() : ring_prime_field(b.p);
}

bool is_subring(const RingDesc& a, const RingDesc& b) {
  if (a.base_field() != b.base_field()) return false;
  if (a == b) return true;
  if (a.is_base_field_kind()) return true;  // constants embed everywhere
  if (b.kind == RingKind::rational_functions) return true;
  if (a.kind == RingKind::poly)
    return b.kind == RingKind::laurent || b.kind == RingKind::local_at_zero;
  return false;
}

bool RingElem::fraction_in_ring(const RingDesc& r, const Poly& num, const Poly& den) {
  switch (r.kind) {
    case RingKind::prime_field:
    case RingKind::rationals:
      return num.is_constant() && den.is_constant();
    case RingKind::poly:
      return den.is_constant();
    case RingKind::laurent: {
      // canonical den is monic; membership means den = t^k
      for (int i = 0; i < den.degree(); ++i)
        if (!den.coeff(static_cast<std::size_t>(i)).is_zero()) return false;
      return true;
    }
    case RingKind::local_at_zero:
      return !den.coeff(0).is_zero();
    case RingKind::rational_functions:
      return true;
  }
  return false;
}

RingElem RingElem::from_fraction(const RingDesc& r, Poly num, Poly den) {
  if (num.field() != r.base_field() || den.field() != r.base_field())
    throw RingMismatch("fraction coefficients not over the ring's base field");
  if (den.is_zero()) throw RingMismatch("zero denominator");
  if (num.is_zero()) {
    den = Poly::one(r.base_field());
  } else {
    Poly g = poly_gcd(num, den);
    num = num.divmod(g).first;
    den = den.divmod(g).first;
    Scalar lead = den.leading();
    if (!lead.is_one()) {
      Scalar inv = lead.inverse();
      num = num.scaled(inv);
      den = den.scaled(inv);
    }
  }
  if (!fraction_in_ring(r, num, den))
    throw RingMismatch("fraction does not satisfy the invariants of " + r.to_string());
  RingElem e;
  e.ring_ = r;
  e.num_ = std::move(num);
  e.den_ = std::move(den);
  return e;
}

RingElem RingElem::zero(const RingDesc& r) {
  return from_fraction(r, Poly::zero(r.base_field()), Poly::one(r.base_field()));
}

RingElem RingElem::one(const RingDesc& r) {
  return from_fraction(r, Poly::one(r.base_field()), Poly::one(r.base_field()));
}

RingElem RingElem::from_int(const RingDesc& r, long n) {
  return constant(r, Scalar(r.base_field(), n));
}

RingElem RingElem::constant(const RingDesc& r, const Scalar& c) {
  if (c.field() != r.base_field()) throw RingMismatch("constant over wrong base field");
  return from_fraction(r, Poly::constant(c), Poly::one(r.base_field()));
}

RingElem RingElem::t(const RingDesc& r) {
  if (r.is_base_field_kind()) throw ShapeError("base field has no variable t");
  return from_fraction(r, Poly::t(r.base_field()), Poly::one(r.base_field()));
}

RingElem RingElem::t_power(const RingDesc& r, int k) {
  if (r.is_base_field_kind()) {
    if (k == 0) return one(r);
    throw ShapeError("base field has no variable t");
  }
  BaseField b = r.base_field();
  if (k >= 0)
    return from_fraction(r, Poly::t_power(b, static_cast<std::size_t>(k)), Poly::one(b));
  return from_fraction(r, Poly::one(b), Poly::t_power(b, static_cast<std::size_t>(-k)));
}

bool RingElem::is_one() const { return num_.is_constant() && num_.coeff(0).is_one() && den_.is_constant(); }

bool RingElem::is_unit() const {
  if (is_zero()) return false;
  switch (ring_.kind) {
    case RingKind::prime_field:
    case RingKind::rationals:
    case RingKind::rational_functions:
      return true;
    case RingKind::poly:
      return num_.is_constant();
    case RingKind::laurent: {
      // units are c * t^k: numerator must be a monomial
      std::size_t terms = 0;
      for (const auto& c : num_.coeffs())
        if (!c.is_zero()) ++terms;
      return terms == 1;
    }
    case RingKind::local_at_zero:
      return !num_.coeff(0).is_zero();
  }
  return false;
}

RingElem RingElem::operator+(const RingElem& o) const {
  if (ring_ != o.ring_) throw RingMismatch("ring mismatch in +");
  return from_fraction(ring_, num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RingElem RingElem::operator-(const RingElem& o) const { return *this + (-o); }

RingElem RingElem::operator*(const RingElem& o) const {
  if (ring_ != o.ring_) throw RingMismatch("ring mismatch in *");
  return from_fraction(ring_, num_ * o.num_, den_ * o.den_);
}

RingElem RingElem::operator-() const {
  RingElem e = *this;
  e.num_ = -e.num_;
  return e;
}

RingElem RingElem::inverse() const {
  if (!is_unit())
    throw NotAUnit("element " + to_string() + " is not a unit of " + ring_.to_string());
  return from_fraction(ring_, den_, num_);
}

bool RingElem::operator==(const RingElem& o) const {
  if (ring_ != o.ring_) throw RingMismatch("ring mismatch in ==");
  return num_ == o.num_ && den_ == o.den_;
}

RingElem RingElem::divide_exact(const RingElem& o) const {
  if (ring_ != o.ring_) throw RingMismatch("ring mismatch in division");
  if (o.is_zero()) throw ShapeError("division by zero");
  try {
    return from_fraction(ring_, num_ * o.den_, den_ * o.num_);
  } catch (const RingMismatch&) {
    throw ShapeError("quotient leaves the ring " + ring_.to_string());
  }
}

int RingElem::degree_size() const {
  return std::max(num_.degree(), den_.degree());
}

int RingElem::t_valuation() const {
  if (is_zero()) throw ShapeError("t-valuation of zero");
  return static_cast<int>(num_.t_valuation()) - static_cast<int>(den_.t_valuation());
}

RingElem RingElem::into(const RingDesc& r) const {
  if (r == ring_) return *this;
  return from_fraction(r, num_, den_);
}

std::string RingElem::to_string() const {
  auto poly_str = [](const Poly& p) {
    if (p.is_zero()) return std::string("0");
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
      const Scalar& c = p.coeffs()[i];
      if (c.is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      if (i == 0 || !c.is_one()) os << c.to_string();
      if (i > 0) {
        if (!c.is_one()) os << "*";
        os << "t";
        if (i > 1) os << "^" << i;
      }
    }
    return os.str();
  };
  if (den_.is_constant()) return poly_str(num_);
  return "(" + poly_str(num_) + ")/(" + poly_str(den_) + ")";
}

int RingElem::compare(const RingElem& a, const RingElem& b) {
  if (int c = Poly::compare(a.den_, b.den_); c != 0) return c;
  return Poly::compare(a.num_, b.num_);
}

RingHom RingHom::inclusion(const RingDesc& source, const RingDesc& target) {
  if (!is_subring(source, target))
    throw RingMismatch("no canonical inclusion " + source.to_string() + " -> " +
                       target.to_string());
  RingHom h;
  h.source_ = source;
  h.target_ = target;
  h.inclusion_ = true;
  return h;
}

RingHom RingHom::send_t(const RingDesc& source, const RingDesc& target, RingElem t_image) {
  if (source.is_base_field_kind())
    throw ShapeError("t-substitution hom needs a source containing t");
  if (source.base_field() != target.base_field())
    throw RingMismatch("hom must fix the base field");
  if (t_image.ring() != target) throw RingMismatch("t image not in target ring");
  // sources where t is invertible need a unit image
  if (source.kind == RingKind::laurent && !t_image.is_unit())
    throw NotAUnit("image of t must be a unit for a Laurent source");
  RingHom h;
  h.source_ = source;
  h.target_ = target;
  h.inclusion_ = false;
  h.t_image_ = std::move(t_image);
  return h;
}

RingElem RingHom::apply(const RingElem& x) const {
  if (x.ring() != source_) throw RingMismatch("hom applied to element of wrong ring");
  if (inclusion_) return x.into(target_);
  // evaluate num and den at t_image over the target's fraction field
  RingDesc frac = target_.is_base_field_kind()
                      ? target_
                      : ring_rational_functions(target_.base_field());
  RingElem img = t_image_.into(frac);
  auto eval = [&](const Poly& p) {
    RingElem acc = RingElem::zero(frac);
    for (std::size_t i = p.coeffs().size(); i-- > 0;)
      acc = acc * img + RingElem::constant(frac, p.coeffs()[i]);
    return acc;
  };
  RingElem n = eval(x.num()), d = eval(x.den());
  if (d.is_zero()) throw NotAUnit("hom sends denominator to zero");
  return n.divide_exact(d).into(target_);
}

RingHom RingHom::compose(const RingHom& outer, const RingHom& inner) {
  if (inner.target_ != outer.source_) throw RingMismatch("homs not composable");
  if (inner.source_.is_base_field_kind() || (inner.inclusion_ && outer.inclusion_ &&
                                             is_subring(inner.source_, outer.target_)))
    return inclusion(inner.source_, outer.target_);
  RingElem t_in_mid =
      inner.inclusion_ ? RingElem::t(inner.target_) : inner.t_image_;
  return send_t(inner.source_, outer.target_, outer.apply(t_in_mid));
}

bool RingHom::operator==(const RingHom& o) const {
  if (source_ != o.source_ || target_ != o.target_) return false;
  if (source_.is_base_field_kind()) return true;
  RingElem a = inclusion_ ? RingElem::t(source_).into(target_) : t_image_;
  RingElem b = o.inclusion_ ? RingElem::t(o.source_).into(o.target_) : o.t_image_;
  return a == b;
}

}  // namespace patchcat
