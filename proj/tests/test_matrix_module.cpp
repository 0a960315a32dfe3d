#include <doctest.h>

#include "helpers.hpp"

using namespace patchcat;
using namespace patchcat::testing;

namespace {

void check_snf_contract(const Mat& m, const SnfResult& s) {
  CHECK((s.u * m) * s.v == s.d);
  CHECK(mat_inverse(s.u).has_value());
  CHECK(mat_inverse(s.v).has_value());
  int k = std::min(s.d.rows(), s.d.cols());
  for (int i = 0; i < s.d.rows(); ++i) {
    for (int j = 0; j < s.d.cols(); ++j) {
      if (i != j) CHECK(s.d.at(i, j).is_zero());
    }
  }
  for (int i = 0; i + 1 < k; ++i) {
    const RingElem& a = s.d.at(i, i);
    const RingElem& b = s.d.at(i + 1, i + 1);
    if (a.is_zero()) {
      CHECK(b.is_zero());
    } else {
      CHECK(solve_exact(mat1(a), mat1(b)).has_value());  // a divides b
    }
  }
}

}  // namespace

TEST_SUITE("matrix_module") {

TEST_CASE("smith normal form sorts and merges diagonal entries") {
  BaseField q = rationals_field();
  RingDesc kt = ring_poly(q);
  Mat m = diag2(RingElem::t_power(kt, 2), RingElem::t(kt));
  SnfResult s = smith_normal_form(m);
  check_snf_contract(m, s);
  CHECK(s.d.at(0, 0) == RingElem::t(kt));
  CHECK(s.d.at(1, 1) == RingElem::t_power(kt, 2));
}

TEST_CASE("smith normal form of the nonsplit shear") {
  BaseField q = rationals_field();
  RingDesc kt = ring_poly(q);
  Mat m = mat2(RingElem::t(kt), ci(kt, 1), ci(kt, 0), RingElem::t(kt));
  SnfResult s = smith_normal_form(m);
  check_snf_contract(m, s);
  CHECK(s.d.at(0, 0) == ci(kt, 1));
  CHECK(s.d.at(1, 1) == RingElem::t_power(kt, 2));
}

TEST_CASE("smith normal form uses canonical associates per ring") {
  BaseField q = rationals_field();
  RingDesc loc = ring_local_at_zero(q);
  Mat a = mat1(RingElem::from_fraction(loc, poly(q, {0, 0, 1, 1}), Poly::one(q)));
  CHECK(smith_normal_form(a).d.at(0, 0) == tp(loc, 2));

  RingDesc lau = ring_laurent(q);
  Mat b = mat1(tp(lau, -1) + ci(lau, 1));
  CHECK(smith_normal_form(b).d.at(0, 0) ==
        RingElem::from_fraction(lau, poly(q, {1, 1}), Poly::one(q)));

  RingDesc f5 = ring_scalars(prime_field(5));
  Mat c = mat1(ci(f5, 3));
  CHECK(smith_normal_form(c).d.at(0, 0) == ci(f5, 1));
}

TEST_CASE("determinant and ring-aware inversion") {
  BaseField q = rationals_field();
  RingDesc kq = ring_scalars(q);
  Mat m = mat2(ci(kq, 1), ci(kq, 2), ci(kq, 3), ci(kq, 4));
  CHECK(det(m) == ci(kq, -2));

  RingDesc kt = ring_poly(q);
  Mat shear = mat2(ci(kt, 1), RingElem::t(kt), ci(kt, 0), ci(kt, 1));
  auto inv = mat_inverse(shear);
  REQUIRE(inv.has_value());
  CHECK(shear * *inv == Mat::identity(kt, 2));
  CHECK(!mat_inverse(diag2(RingElem::t(kt), ci(kt, 1))).has_value());

  RingDesc lau = ring_laurent(q);
  auto linv = mat_inverse(diag2(tp(lau, 3), tp(lau, -2)));
  REQUIRE(linv.has_value());
  CHECK(linv->at(0, 0) == tp(lau, -3));
}

TEST_CASE("exact solve and kernel basis") {
  BaseField q = rationals_field();
  RingDesc kt = ring_poly(q);
  Mat a = mat2(RingElem::t(kt), ci(kt, 1), ci(kt, 0), RingElem::t(kt));
  Mat x(kt, 2, 1);
  x.at(0, 0) = RingElem::from_fraction(kt, poly(q, {1, 1}), Poly::one(q));
  x.at(1, 0) = RingElem::t(kt);
  Mat rhs = a * x;
  auto sol = solve_exact(a, rhs);
  REQUIRE(sol.has_value());
  CHECK(a * *sol == rhs);

  // no solution: t * x = 1 over k[t]
  CHECK(!solve_exact(mat1(RingElem::t(kt)), mat1(ci(kt, 1))).has_value());

  Mat row(kt, 1, 2);
  row.at(0, 0) = RingElem::t(kt);
  row.at(0, 1) = -RingElem::t_power(kt, 2);
  Mat kb = kernel_basis(row);
  REQUIRE(kb.cols() == 1);
  CHECK((row * kb).is_zero());
  CHECK(kb.at(0, 0) == RingElem::t(kt));  // primitive generator (t, 1)
  CHECK(kb.at(1, 0) == ci(kt, 1));
}

TEST_CASE("kernel and cokernel of multiplication by t") {
  BaseField q = rationals_field();
  RingDesc kt = ring_poly(q);
  PresentedModule r1 = free_module(kt, 1);
  ModuleMap by_t(r1, r1, mat1(RingElem::t(kt)));
  auto [tors_k, rank_k] = invariant_factors(kernel(by_t).module);
  CHECK(tors_k.empty());
  CHECK(rank_k == 0);
  auto [tors_c, rank_c] = invariant_factors(cokernel(by_t).module);
  REQUIRE(tors_c.size() == 1);
  CHECK(tors_c[0] == RingElem::t(kt));
  CHECK(rank_c == 0);
}

TEST_CASE("cokernel of the shear is cyclic with invariant t^2") {
  BaseField q = rationals_field();
  RingDesc kt = ring_poly(q);
  PresentedModule r2 = free_module(kt, 2);
  ModuleMap f(r2, r2, mat2(RingElem::t(kt), ci(kt, 1), ci(kt, 0), RingElem::t(kt)));
  auto [tors, rank] = invariant_factors(cokernel(f).module);
  REQUIRE(tors.size() == 1);
  CHECK(tors[0] == RingElem::t_power(kt, 2));
  CHECK(rank == 0);
}

TEST_CASE("tensor and hom of cyclic torsion modules") {
  BaseField q = rationals_field();
  RingDesc kt = ring_poly(q);
  PresentedModule m = cyclic(kt, RingElem::t_power(kt, 2));
  PresentedModule n = cyclic(kt, RingElem::t_power(kt, 3));

  auto [tt, tr] = invariant_factors(tensor(m, n));
  REQUIRE(tt.size() == 1);
  CHECK(tt[0] == RingElem::t_power(kt, 2));
  CHECK(tr == 0);

  HomDescription h = hom_module(m, n);
  auto [ht, hr] = invariant_factors(h.module);
  REQUIRE(ht.size() == 1);
  CHECK(ht[0] == RingElem::t_power(kt, 2));
  CHECK(hr == 0);
  CHECK(!h.basis.empty());

  auto [ft, fr] = invariant_factors(tensor(m, free_module(kt, 2)));
  CHECK(ft == std::vector<RingElem>{RingElem::t_power(kt, 2),
                                    RingElem::t_power(kt, 2)});
  CHECK(fr == 0);
}

TEST_CASE("isomorphism classification via invariant factors") {
  BaseField q = rationals_field();
  RingDesc kt = ring_poly(q);
  PresentedModule a(kt, diag2(RingElem::t(kt), RingElem::t_power(kt, 2)));
  PresentedModule b(kt, diag2(RingElem::t_power(kt, 2), RingElem::t(kt)));
  PresentedModule c(kt, diag2(RingElem::t(kt), RingElem::t(kt)));
  auto iso = is_isomorphic(a, b);
  REQUIRE(iso.has_value());
  CHECK(!is_isomorphic(a, c).has_value());

  // redundant presentation of the same module
  Mat rel(kt, 1, 2);
  rel.at(0, 0) = RingElem::t(kt);
  rel.at(0, 1) = RingElem::t(kt);
  CHECK(is_isomorphic(PresentedModule(kt, rel), cyclic(kt, RingElem::t(kt)))
            .has_value());
}

TEST_CASE("module maps validate well-definedness") {
  BaseField q = rationals_field();
  RingDesc kt = ring_poly(q);
  PresentedModule m = cyclic(kt, RingElem::t(kt));
  PresentedModule n = cyclic(kt, RingElem::t_power(kt, 2));
  // 1 does not carry t*(generator) to zero in n
  CHECK_THROWS(ModuleMap(m, n, mat1(ci(kt, 1))));
  // t does
  CHECK_NOTHROW(ModuleMap(m, n, mat1(RingElem::t(kt))));
}

}  // TEST_SUITE
