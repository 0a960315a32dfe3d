#include <doctest.h>

#include "patchcat/errors.hpp"
#include "patchcat/fincat.hpp"

using namespace patchcat;

TEST_SUITE("fincat") {

TEST_CASE("builders satisfy the category axioms") {
  CHECK(discrete_category(3).morphisms() == 3);
  CHECK(arrow_category().morphisms() == 3);
  FinCat iso = walking_isomorphism();
  CHECK(iso.morphisms() == 4);
  for (int f = 0; f < iso.morphisms(); ++f) CHECK(iso.is_iso(f));
  FinCat z2 = group_z2();
  int s = z2.identity(0) == 0 ? 1 : 0;
  CHECK(z2.compose(s, s) == z2.identity(0));
  FinCat z3 = cyclic_group_category(3);
  CHECK(z3.morphisms() == 3);
  CHECK(z3.compose(1, 2) == z3.identity(0));
}

TEST_CASE("invalid tables are rejected") {
  // one object, two morphisms, composition forgets the second generator
  std::vector<int> src{0, 0, 0}, dst{0, 0, 0}, id{0};
  std::vector<int> comp{0, 1, 2, 1, 2, 0, 2, 0, 1};
  CHECK_NOTHROW(FinCat(1, src, dst, id, comp));  // this one is Z/3
  comp[4] = 1;  // now (1*1)*2 = 0 but 1*(1*2) = 1
  CHECK_THROWS(FinCat(1, src, dst, id, comp));
}

TEST_CASE("functor enumeration counts match hand counts") {
  CHECK(all_functors(arrow_category(), arrow_category()).size() == 3);
  CHECK(all_functors(group_z2(), group_z2()).size() == 2);
  CHECK(all_functors(cyclic_group_category(3), cyclic_group_category(3)).size() == 3);
  CHECK(all_functors(discrete_category(2), arrow_category()).size() == 4);
  CHECK(all_functors(walking_isomorphism(), group_z2()).size() == 2);
}

TEST_CASE("functor enumeration respects the step budget") {
  CHECK_THROWS_AS(all_functors(arrow_category(), arrow_category(), 1),
                  BudgetExceeded);
}

TEST_CASE("equalizer of identity and inversion on the cyclic group of order 3") {
  // objects are pairs (the unique object, phi) for each of the 3 choices of
  // isomorphism phi, and between any two pairs there is exactly one
  // compatible group element, so the equalizer is codiscrete on 3 objects
  FinCat z3 = cyclic_group_category(3);
  std::vector<int> obj{0};
  FinFunctor ident(z3, z3, obj, {0, 1, 2});
  FinFunctor invert(z3, z3, obj, {0, 2, 1});
  EqualizerCat e = build_equalizer_cat(ident, invert);
  CHECK(e.eq.objects() == 3);
  CHECK(e.eq.morphisms() == 9);
  for (const FinCat& test :
       {discrete_category(1), arrow_category(), cyclic_group_category(3)}) {
    UniversalPropertyReport rep = verify_universal_property(ident, invert, test);
    CHECK(rep.passed);
    CHECK(rep.functor_bijection);
    CHECK(rep.nat_trans_bijection);
  }
}

TEST_CASE("candidate equalizers that are too small or disconnected fail") {
  FinCat z3 = cyclic_group_category(3);
  std::vector<int> obj{0};
  FinFunctor ident(z3, z3, obj, {0, 1, 2});
  FinFunctor invert(z3, z3, obj, {0, 2, 1});
  EqualizerCat honest = build_equalizer_cat(ident, invert);

  // the empty category misses every cone
  FinCat empty = discrete_category(0);
  FinFunctor empty_proj(empty, z3, {}, {});
  FinNatTrans empty_structure(compose(invert, empty_proj),
                              compose(ident, empty_proj), {});
  EqualizerCat too_small{empty, empty_proj, empty_structure, {}, {}};
  CHECK(!verify_candidate_equalizer(ident, invert, too_small, discrete_category(1))
             .passed);

  // keeping the objects but dropping the connecting morphisms breaks the
  // morphism side of the bijection
  FinCat disc = discrete_category(3);
  FinFunctor disc_proj(disc, z3, {0, 0, 0}, {0, 0, 0});
  std::vector<int> comps;
  for (const auto& [a, phi] : honest.object_pairs) {
    (void)a;
    comps.push_back(phi);
  }
  FinNatTrans disc_structure(compose(invert, disc_proj), compose(ident, disc_proj),
                             comps);
  EqualizerCat disconnected{disc, disc_proj, disc_structure, honest.object_pairs, {0, 0, 0}};
  CHECK(!verify_candidate_equalizer(ident, invert, disconnected, arrow_category())
             .passed);
}

TEST_CASE("universal property across the catalog") {
  auto pairs = parallel_pair_catalog(8);
  REQUIRE(pairs.size() == 8);
  long functors_total = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    UniversalPropertyReport rep = verify_universal_property(
        pairs[i].first, pairs[i].second, walking_isomorphism());
    CHECK(rep.passed);
    functors_total += rep.functors_into_equalizer;
  }
  CHECK(functors_total > 0);  // the suite is not vacuous
}

TEST_CASE("full subcategories and morphism removal") {
  FinCat arrow = arrow_category();
  FinCat pt = full_subcategory(arrow, {0});
  CHECK(pt.objects() == 1);
  CHECK(pt.morphisms() == 1);
  auto disc = remove_morphism(arrow, 2);  // drop the non-identity arrow
  REQUIRE(disc.has_value());
  CHECK(disc->objects() == 2);
  CHECK(disc->morphisms() == 2);
}

}  // TEST_SUITE
