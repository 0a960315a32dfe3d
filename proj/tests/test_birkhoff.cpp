#include <doctest.h>

#include <algorithm>
#include <optional>
#include <vector>

#include "helpers.hpp"
#include "patchcat/birkhoff.hpp"
#include "patchcat/rng.hpp"

using namespace patchcat;
using namespace patchcat::testing;

namespace {

void check_factorization(const Cocycle& c) {
  BirkhoffFactorization fac = birkhoff_factorize(c);
  Mat diag = Mat::identity(c.ring(), c.rank());
  for (int i = 0; i < c.rank(); ++i) {
    diag.at(i, i) = RingElem::t_power(c.ring(), fac.type.exponents[i]);
  }
  CHECK((fac.m_minus * diag) * fac.m_plus == c.matrix());
  CHECK(is_chart_inf_matrix(fac.m_minus));
  CHECK(is_chart_zero_matrix(fac.m_plus));
  CHECK(std::is_sorted(fac.type.exponents.rbegin(), fac.type.exponents.rend()));
  CHECK(fac.type.sum() == det(c.matrix()).t_valuation());
}

/// Independent brute-force oracle over F_2: search every exponent pair and
/// every polynomial matrix of bounded degree for a factorization
/// c = (chart-inf matrix) * diag(t^a) * b, and return the exponents found.
std::optional<std::vector<int>> search_type_2x2_f2(const Cocycle& c, int exp_window,
                                                   int deg_bound) {
  const RingDesc& lau = c.ring();
  // every polynomial of degree <= deg_bound over F_2, as a Laurent element
  std::vector<RingElem> polys;
  int n_polys = 1 << (deg_bound + 1);
  for (int mask = 0; mask < n_polys; ++mask) {
    RingElem e = RingElem::zero(lau);
    for (int d = 0; d <= deg_bound; ++d) {
      if (mask & (1 << d)) e = e + tp(lau, d);
    }
    polys.push_back(e);
  }
  // b must lie in GL_2(F_2[t]), i.e. det b = 1; then a = c * b^-1 * d^-1 is
  // chart-inf with constant determinant exactly when the exponent sum
  // matches the determinant valuation, making it a genuine factorization.
  int det_val = det(c.matrix()).t_valuation();
  for (int a0 = exp_window; a0 >= -exp_window; --a0) {
    int a1 = det_val - a0;
    if (a1 > a0 || a1 < -exp_window) continue;
    Mat dinv = diag2(tp(lau, -a0), tp(lau, -a1));
    for (const RingElem& b00 : polys) {
      for (const RingElem& b01 : polys) {
        for (const RingElem& b10 : polys) {
          for (const RingElem& b11 : polys) {
            Mat b = mat2(b00, b01, b10, b11);
            if (!(det(b) == RingElem::one(lau))) continue;
            auto binv = mat_inverse(b);
            REQUIRE(binv.has_value());
            Mat candidate = (c.matrix() * *binv) * dinv;
            if (is_chart_inf_matrix(candidate)) {
              return std::vector<int>{a0, a1};
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_SUITE("birkhoff") {

TEST_CASE("factorization of frozen cocycles") {
  BaseField f5 = prime_field(5);
  RingDesc lau = ring_laurent(f5);

  Cocycle c1(diag2(tp(lau, 2), tp(lau, -1)));
  BirkhoffFactorization f1 = birkhoff_factorize(c1);
  CHECK(f1.type.exponents == std::vector<int>{2, -1});
  check_factorization(c1);

  Cocycle c2(mat2(ci(lau, 2), ci(lau, 1), ci(lau, 1), ci(lau, 1)));
  BirkhoffFactorization f2 = birkhoff_factorize(c2);
  CHECK(f2.type.is_trivial());
  check_factorization(c2);

  Cocycle c3(mat2(tp(lau, 1), ci(lau, 1), ci(lau, 0), tp(lau, -1)));
  BirkhoffFactorization f3 = birkhoff_factorize(c3);
  CHECK(f3.type.is_trivial());
  CHECK(f3.m_minus == mat2(ci(lau, 1), ci(lau, 0), tp(lau, -1), ci(lau, 1)));
  check_factorization(c3);

  Cocycle c4(diag2(tp(lau, 1), tp(lau, -1)));
  CHECK(birkhoff_factorize(c4).type.exponents == std::vector<int>{1, -1});
}

TEST_CASE("factorization type agrees with the exhaustive search oracle") {
  BaseField f2 = prime_field(2);
  RingDesc lau = ring_laurent(f2);
  std::vector<Cocycle> pool;
  pool.emplace_back(diag2(tp(lau, 1), tp(lau, -1)));
  pool.emplace_back(mat2(tp(lau, 1), ci(lau, 1), ci(lau, 0), tp(lau, -1)));
  pool.emplace_back(mat2(ci(lau, 0), tp(lau, 1), tp(lau, -1), ci(lau, 1)));
  pool.emplace_back(mat2(tp(lau, -1), ci(lau, 1), ci(lau, 1), tp(lau, 1) + ci(lau, 1)));
  Rng rng(29);
  for (int i = 0; i < 4; ++i) pool.push_back(random_cocycle(rng, lau, 2, 1, 2));
  for (const Cocycle& c : pool) {
    auto found = search_type_2x2_f2(c, 2, 2);
    REQUIRE(found.has_value());
    CHECK(*found == birkhoff_factorize(c).type.exponents);
    check_factorization(c);
  }
}

TEST_CASE("factorization contract on random cocycles over both fields") {
  for (BaseField f : {prime_field(5), rationals_field()}) {
    RingDesc lau = ring_laurent(f);
    Rng rng(31);
    for (int n = 1; n <= 3; ++n) {
      for (int i = 0; i < 5; ++i) {
        check_factorization(random_cocycle(rng, lau, n, 2));
      }
    }
  }
}

TEST_CASE("global sections of line bundles have the classical dimensions") {
  BaseField f5 = prime_field(5);
  RingDesc lau = ring_laurent(f5);
  for (int k = -3; k <= 3; ++k) {
    TwoChartDatum d = make_two_chart(Cocycle(mat1(tp(lau, k))));
    CHECK(global_sections(d).dimension == std::max(0, k + 1));
  }
  TwoChartDatum sum = make_two_chart(Cocycle(diag2(tp(lau, 2), tp(lau, -1))));
  CHECK(global_sections(sum).dimension == 3);
}

TEST_CASE("twisting shifts the section profile") {
  BaseField q = rationals_field();
  RingDesc lau = ring_laurent(q);
  TwoChartDatum d = make_two_chart(Cocycle(diag2(tp(lau, 1), tp(lau, -2))));
  CHECK(global_sections(d).dimension == 2);
  CHECK(global_sections(twist(d, 1)).dimension == 3);   // (2, -1)
  CHECK(global_sections(twist(d, 2)).dimension == 5);   // (3, 0)
  CHECK(global_sections(twist(d, -2)).dimension == 0);  // (-1, -4)
}

TEST_CASE("section dimensions match the type predicted by factorization") {
  for (BaseField f : {prime_field(5), rationals_field()}) {
    RingDesc lau = ring_laurent(f);
    Rng rng(37);
    for (int i = 0; i < 6; ++i) {
      Cocycle c = random_cocycle(rng, lau, 2, 2);
      SplittingType type = bundle_type(c);
      int expected = 0;
      for (int a : type.exponents) expected += std::max(0, a + 1);
      CHECK(global_sections(make_two_chart(c)).dimension == expected);
    }
  }
}

TEST_CASE("sections satisfy the gluing equation") {
  BaseField f5 = prime_field(5);
  RingDesc lau = ring_laurent(f5);
  Cocycle c(mat2(tp(lau, 2), ci(lau, 1), ci(lau, 0), ci(lau, 1)));
  TwoChartDatum d = make_two_chart(c);
  GlobalSections gs = global_sections(d);
  CHECK(gs.dimension == static_cast<int>(gs.basis.size()));
  for (const Section& s : gs.basis) {
    CHECK(c.matrix() * s.s_inf == s.s0);
    CHECK(is_chart_zero_matrix(s.s0));
    CHECK(is_chart_inf_matrix(s.s_inf));
  }
}

TEST_CASE("reconstruction recovers the splitting type with exact presentations") {
  for (BaseField f : {prime_field(5), rationals_field()}) {
    RingDesc lau = ring_laurent(f);
    Rng rng(43);
    for (int i = 0; i < 4; ++i) {
      Cocycle c = random_cocycle(rng, lau, 2, 2);
      Reconstruction rec = reconstruct(make_two_chart(c));
      CHECK(rec.type == bundle_type(c));
      CHECK(rec.presentation_exact);
      // a0 and a_inf witness diag(t^type) -> d over the two charts
      Mat diag = Mat::identity(lau, 2);
      for (int j = 0; j < 2; ++j) diag.at(j, j) = tp(lau, rec.type.exponents[j]);
      CHECK(c.matrix() * rec.a_inf == rec.a0 * diag);
      CHECK(is_chart_zero_matrix(rec.a0));
      CHECK(is_chart_inf_matrix(rec.a_inf));
    }
  }
}

TEST_CASE("cocycles must be invertible over the Laurent ring") {
  BaseField f5 = prime_field(5);
  RingDesc lau = ring_laurent(f5);
  CHECK_THROWS_AS(Cocycle(mat1(tp(lau, 1) + ci(lau, 1))), NonInvertible);
  CHECK_THROWS_AS(Cocycle(mat1(RingElem::zero(lau))), NonInvertible);
  CHECK_NOTHROW(Cocycle(mat1(tp(lau, -4))));
}

}  // TEST_SUITE
