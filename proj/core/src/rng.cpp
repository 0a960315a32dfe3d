#include "patchcat/rng.hpp"

#include "patchcat/errors.hpp"

namespace patchcat {

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw ShapeError("empty sampling range");
  std::uint64_t limit = ~0ULL - ~0ULL % n;
  for (;;) {
    std::uint64_t x = next();
    if (x < limit) return x % n;
  }
}

int Rng::range(int lo, int hi) {
  if (hi < lo) throw ShapeError("empty sampling range");
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

Scalar random_scalar(Rng& rng, BaseField f, int height) {
  if (f.p != 0) return Scalar::from_residue(f, rng.below(f.p));
  mpq_class q(rng.range(-height, height), rng.range(1, height));
  q.canonicalize();
  return Scalar::from_rational(q);
}

Scalar random_nonzero_scalar(Rng& rng, BaseField f, int height) {
  for (;;) {
    Scalar s = random_scalar(rng, f, height);
    if (!s.is_zero()) return s;
  }
}

Poly random_poly(Rng& rng, BaseField f, int max_degree, int height) {
  std::vector<Scalar> cs;
  int d = rng.range(-1, max_degree);  // -1 samples the zero polynomial
  for (int i = 0; i <= d; ++i) cs.push_back(random_scalar(rng, f, height));
  if (d >= 0 && cs.back().is_zero()) cs.back() = Scalar::one(f);
  return Poly(f, std::move(cs));
}

RingElem random_elem(Rng& rng, const RingDesc& r, int max_degree, int height) {
  BaseField f = r.base_field();
  switch (r.kind) {
    case RingKind::prime_field:
    case RingKind::rationals:
      return RingElem::constant(r, random_scalar(rng, f, height));
    case RingKind::poly:
      return RingElem::from_fraction(r, random_poly(rng, f, max_degree, height),
                                     Poly::one(f));
    case RingKind::laurent: {
      Poly num = random_poly(rng, f, max_degree, height);
      int shift = rng.range(-max_degree, 0);
      return RingElem::from_fraction(r, num, Poly::one(f)) *
             RingElem::t_power(r, shift);
    }
    case RingKind::local_at_zero: {
      Poly num = random_poly(rng, f, max_degree, height);
      Poly den = random_poly(rng, f, max_degree, height);
      if (den.coeff(0).is_zero()) den = den + Poly::one(f);
      return RingElem::from_fraction(r, num, den);
    }
    case RingKind::rational_functions: {
      Poly num = random_poly(rng, f, max_degree, height);
      Poly den = random_poly(rng, f, max_degree, height);
      if (den.is_zero()) den = Poly::one(f);
      return RingElem::from_fraction(r, num, den);
    }
  }
  throw UnsupportedRing("random_elem");
}

RingElem random_unit(Rng& rng, const RingDesc& r, int max_degree, int height) {
  BaseField f = r.base_field();
  Scalar c = random_nonzero_scalar(rng, f, height);
  switch (r.kind) {
    case RingKind::prime_field:
    case RingKind::rationals:
    case RingKind::poly:
      return RingElem::constant(r, c);
    case RingKind::laurent:
      return RingElem::constant(r, c) *
             RingElem::t_power(r, rng.range(-max_degree, max_degree));
    case RingKind::local_at_zero: {
      Poly num = random_poly(rng, f, max_degree, height);
      Poly den = random_poly(rng, f, max_degree, height);
      if (num.coeff(0).is_zero()) num = num + Poly::constant(c);
      if (den.coeff(0).is_zero()) den = den + Poly::one(f);
      return RingElem::from_fraction(r, num, den);
    }
    case RingKind::rational_functions: {
      RingElem x = random_elem(rng, r, max_degree, height);
      return x.is_zero() ? RingElem::constant(r, c) : x;
    }
  }
  throw UnsupportedRing("random_unit");
}

Mat random_mat(Rng& rng, const RingDesc& r, int rows, int cols, int max_degree,
               int height) {
  Mat m(r, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = random_elem(rng, r, max_degree, height);
  return m;
}

Mat random_invertible(Rng& rng, const RingDesc& r, int n, int ops, int max_degree,
                      int height) {
  Mat m = Mat::identity(r, n);
  for (int s = 0; s < ops; ++s) {
    int kind = n >= 2 ? rng.range(0, 2) : 0;
    if (kind == 0) {
      int i = rng.range(0, n - 1);
      RingElem u = random_unit(rng, r, max_degree, height);
      for (int j = 0; j < n; ++j) m.at(i, j) = m.at(i, j) * u;
    } else if (kind == 1) {
      int i = rng.range(0, n - 1);
      int j = rng.range(0, n - 2);
      if (j >= i) ++j;
      RingElem c = random_elem(rng, r, max_degree, height);
      for (int k = 0; k < n; ++k) m.at(i, k) = m.at(i, k) + c * m.at(j, k);
    } else {
      int i = rng.range(0, n - 1);
      int j = rng.range(0, n - 2);
      if (j >= i) ++j;
      for (int k = 0; k < n; ++k) std::swap(m.at(i, k), m.at(j, k));
    }
  }
  return m;
}

}  // namespace patchcat
