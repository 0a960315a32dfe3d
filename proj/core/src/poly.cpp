#include "patchcat/poly.hpp"

#include "patchcat/errors.hpp"

namespace patchcat {

Poly::Poly(BaseField f, std::vector<Scalar> coeffs) : field_(f), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (c.field() != f) throw RingMismatch("polynomial coefficient field mismatch");
  normalize();
}

void Poly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::constant(Scalar c) {
  Poly p(c.field());
  if (!c.is_zero()) p.c_ = {std::move(c)};
  return p;
}

Poly Poly::t(BaseField f) { return t_power(f, 1); }

Poly Poly::t_power(BaseField f, std::size_t k) {
  Poly p(f);
  p.c_.assign(k + 1, Scalar::zero(f));
  p.c_.back() = Scalar::one(f);
  return p;
}

Scalar Poly::coeff(std::size_t i) const {
  return i < c_.size() ? c_[i] : Scalar::zero(field_);
}

Scalar Poly::leading() const {
  if (is_zero()) throw ShapeError("leading coefficient of zero polynomial");
  return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
  if (field_ != o.field_) throw RingMismatch("polynomial field mismatch");
  Poly r(field_);
  std::size_t n = std::max(c_.size(), o.c_.size());
  r.c_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) r.c_.push_back(coeff(i) + o.coeff(i));
  r.normalize();
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (field_ != o.field_) throw RingMismatch("polynomial field mismatch");
  if (is_zero() || o.is_zero()) return zero(field_);
  Poly r(field_);
  r.c_.assign(c_.size() + o.c_.size() - 1, Scalar::zero(field_));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
  r.normalize();
  return r;
}

Poly Poly::scaled(const Scalar& c) const {
  Poly r = *this;
  for (auto& x : r.c_) x = x * c;
  r.normalize();
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (field_ != o.field_) throw RingMismatch("polynomial field mismatch");
  if (c_.size() != o.c_.size()) return false;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw ShapeError("polynomial division by zero");
  Poly q(field_), r = *this;
  if (r.degree() >= d.degree())
    q.c_.assign(static_cast<std::size_t>(r.degree() - d.degree()) + 1, Scalar::zero(field_));
  Scalar lead_inv = d.leading().inverse();
  while (!r.is_zero() && r.degree() >= d.degree()) {
    std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
    Scalar factor = r.leading() * lead_inv;
    q.c_[shift] = q.c_[shift] + factor;
    r = r - d.shifted(shift).scaled(factor);
  }
  q.normalize();
  return {q, r};
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(leading().inverse());
}

Scalar Poly::eval(const Scalar& x) const {
  Scalar acc = Scalar::zero(field_);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

Poly Poly::shifted(std::size_t k) const {
  if (is_zero() || k == 0) return *this;
  Poly r(field_);
  r.c_.assign(k, Scalar::zero(field_));
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

std::size_t Poly::t_valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return i;
  return 0;
}

int Poly::compare(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (std::size_t i = a.c_.size(); i-- > 0;) {
    int c = Scalar::compare(a.c_[i], b.c_[i]);
    if (c != 0) return c;
  }
  return 0;
}

Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

PolyExtGcd poly_ext_gcd(const Poly& a, const Poly& b) {
  BaseField f = a.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::one(f), s1 = Poly::zero(f);
  Poly t0 = Poly::zero(f), t1 = Poly::one(f);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1); r1 = std::move(r);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Poly lead = Poly::constant(r0.leading().inverse());
  return {r0.monic(), lead * s0, lead * t0};
}

}  // namespace patchcat
