#pragma once

#include <initializer_list>
#include <vector>

#include "patchcat/equalizer.hpp"
#include "patchcat/errors.hpp"
#include "patchcat/matrix.hpp"
#include "patchcat/module.hpp"
#include "patchcat/ring.hpp"

namespace patchcat::testing {

inline Poly poly(BaseField f, std::initializer_list<long> coeffs) {
  std::vector<Scalar> c;
  for (long v : coeffs) c.emplace_back(f, v);
  return Poly(f, std::move(c));
}

inline RingElem ci(const RingDesc& r, long v) { return RingElem::from_int(r, v); }
inline RingElem tp(const RingDesc& r, int k) { return RingElem::t_power(r, k); }

inline Mat mat1(const RingElem& e) {
  Mat m(e.ring(), 1, 1);
  m.at(0, 0) = e;
  return m;
}

inline Mat mat2(const RingElem& a, const RingElem& b, const RingElem& c,
                const RingElem& d) {
  Mat m(a.ring(), 2, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

inline Mat diag2(const RingElem& a, const RingElem& d) {
  return mat2(a, RingElem::zero(a.ring()), RingElem::zero(a.ring()), d);
}

inline PresentedModule cyclic(const RingDesc& r, const RingElem& e) {
  return PresentedModule(r, mat1(e));
}

}  // namespace patchcat::testing
