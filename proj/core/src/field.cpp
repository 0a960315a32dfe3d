#include "patchcat/field.hpp"

namespace patchcat {

namespace {

bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  // extended Euclid; p prime and a nonzero mod p
  std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p),
               nr = static_cast<std::int64_t>(a % p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw NotAUnit("element has no inverse mod p");
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

BaseField rationals_field() { return BaseField{0}; }

BaseField prime_field(std::uint32_t p) {
  if (!is_prime_u32(p))
    throw UnsupportedRing("prime field modulus must be prime, got " + std::to_string(p));
  return BaseField{p};
}

Scalar::Scalar(BaseField f, long value) : field_(f) {
  if (f.is_rationals()) {
    q_ = value;
  } else {
    std::int64_t v = value % static_cast<std::int64_t>(f.p);
    if (v < 0) v += f.p;
    r_ = static_cast<std::uint64_t>(v);
  }
}

Scalar Scalar::from_rational(const mpq_class& q) {
  Scalar s;
  s.field_ = rationals_field();
  s.q_ = q;
  s.q_.canonicalize();
  return s;
}

Scalar Scalar::from_residue(BaseField f, std::uint64_t r) {
  if (f.is_rationals()) return Scalar(f, static_cast<long>(r));
  Scalar s;
  s.field_ = f;
  s.r_ = r % f.p;
  return s;
}

bool Scalar::is_zero() const { return field_.is_rationals() ? q_ == 0 : r_ == 0; }
bool Scalar::is_one() const { return field_.is_rationals() ? q_ == 1 : r_ == 1; }

void Scalar::check_same(const Scalar& o) const {
  if (field_ != o.field_)
    throw RingMismatch("scalar fields differ: " + field_.to_string() + " vs " +
                       o.field_.to_string());
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  Scalar s = *this;
  if (field_.is_rationals())
    s.q_ += o.q_;
  else
    s.r_ = (r_ + o.r_) % field_.p;
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same(o);
  Scalar s = *this;
  if (field_.is_rationals())
    s.q_ -= o.q_;
  else
    s.r_ = (r_ + field_.p - o.r_) % field_.p;
  return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  Scalar s = *this;
  if (field_.is_rationals())
    s.q_ *= o.q_;
  else
    s.r_ = (r_ * o.r_) % field_.p;
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (field_.is_rationals())
    s.q_ = -q_;
  else if (r_ != 0)
    s.r_ = field_.p - r_;
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw NotAUnit("zero is not invertible in " + field_.to_string());
  Scalar s = *this;
  if (field_.is_rationals())
    s.q_ = 1 / q_;
  else
    s.r_ = mod_inverse(r_, field_.p);
  return s;
}

bool Scalar::operator==(const Scalar& o) const {
  check_same(o);
  return field_.is_rationals() ? q_ == o.q_ : r_ == o.r_;
}

std::string Scalar::to_string() const {
  if (!field_.is_rationals()) return std::to_string(r_);
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Scalar Scalar::parse(BaseField f, const std::string& text) {
  if (text.empty()) throw ParseError("empty scalar literal");
  try {
    if (f.is_rationals()) {
      mpq_class q(text);
      if (q.get_den() == 0)
        throw ParseError("zero denominator in scalar literal '" + text + "'");
      q.canonicalize();
      return from_rational(q);
    }
    mpz_class z(text);
    mpz_class r = z % f.p;
    if (r < 0) r += f.p;
    return from_residue(f, r.get_ui());
  } catch (const std::invalid_argument&) {
    throw ParseError("bad scalar literal '" + text + "'");
  }
}

int Scalar::compare(const Scalar& a, const Scalar& b) {
  a.check_same(b);
  if (a.field_.is_rationals()) return cmp(a.q_, b.q_);
  return a.r_ < b.r_ ? -1 : (a.r_ > b.r_ ? 1 : 0);
}

}  // namespace patchcat
