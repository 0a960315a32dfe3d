#include <doctest.h>

#include "helpers.hpp"
#include "patchcat/patching.hpp"
#include "patchcat/rng.hpp"

using namespace patchcat;
using namespace patchcat::testing;

TEST_SUITE("patching") {

TEST_CASE("gluing by multiplication with t yields a free module") {
  PatchingContext pc = bl_context(prime_field(5));
  RingDesc loc = ring_local_at_zero(prime_field(5));
  RingDesc lau = ring_laurent(prime_field(5));
  RingDesc overlap = ring_rational_functions(prime_field(5));
  EqObject u = eq_unit(pc.eq);
  EqObject x(pc.eq, {free_module(loc, 1), free_module(lau, 1)},
             ModuleMap(u.glue().source(), u.glue().target(),
                       mat1(RingElem::t(overlap))));
  GluedModule g = glue(pc, x);
  auto [tors, rank] = invariant_factors(g.module);
  CHECK(tors.empty());
  CHECK(rank == 1);
  CHECK(is_isomorphism(g.iso));
}

TEST_CASE("restrict then glue recovers torsion and free summands") {
  for (BaseField f : {prime_field(5), rationals_field()}) {
    PatchingContext pc = bl_context(f);
    RingDesc kt = ring_poly(f);
    Mat rel(kt, 3, 2);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 2; ++j) rel.at(i, j) = RingElem::zero(kt);
    rel.at(0, 0) = RingElem::t_power(kt, 2);
    rel.at(1, 1) = RingElem::from_fraction(kt, poly(f, {1, 1}), Poly::one(f));
    PresentedModule m(kt, rel);  // k[t]/(t^2) + k[t]/(t+1) + free rank 1
    GluedModule g = glue(pc, restrict_module(pc, m));
    CHECK(is_isomorphic(m, g.module).has_value());
    CHECK(is_isomorphism(g.iso));
  }
}

TEST_CASE("skyscrapers live on a single lane") {
  BaseField f5 = prime_field(5);
  PatchingContext pc = bl_context(f5);
  RingDesc kt = ring_poly(f5);

  // at the origin: invisible on the punctured lane
  PresentedModule at_zero = cyclic(kt, RingElem::t(kt));
  EqObject r0 = restrict_module(pc, at_zero);
  auto [t0, rk0] = invariant_factors(r0.part(0));
  CHECK(t0.size() == 1);
  CHECK(rk0 == 0);
  auto [t1, rk1] = invariant_factors(r0.part(1));
  CHECK(t1.empty());
  CHECK(rk1 == 0);
  CHECK(is_isomorphic(at_zero, glue(pc, r0).module).has_value());

  // away from the origin: invisible on the local lane
  PresentedModule at_one =
      cyclic(kt, RingElem::from_fraction(kt, poly(f5, {-1, 1}), Poly::one(f5)));
  EqObject r1 = restrict_module(pc, at_one);
  auto [s0, sk0] = invariant_factors(r1.part(0));
  CHECK(s0.empty());
  CHECK(sk0 == 0);
  auto [s1, sk1] = invariant_factors(r1.part(1));
  CHECK(s1.size() == 1);
  CHECK(sk1 == 0);
  CHECK(is_isomorphic(at_one, glue(pc, r1).module).has_value());
}

TEST_CASE("restriction is fully faithful on sampled pairs") {
  BaseField f5 = prime_field(5);
  PatchingContext pc = bl_context(f5);
  RingDesc kt = ring_poly(f5);
  std::vector<PresentedModule> pool = {
      free_module(kt, 1),
      cyclic(kt, RingElem::t_power(kt, 2)),
      PresentedModule(kt, diag2(RingElem::t(kt),
                                RingElem::from_fraction(kt, poly(f5, {1, 1}),
                                                        Poly::one(f5)))),
  };
  for (const PresentedModule& m : pool) {
    for (const PresentedModule& n : pool) {
      FullFaithfulnessReport rep = check_full_faithfulness(pc, m, n);
      CHECK(rep.natural_map_defined);
      CHECK(rep.invariants_match);
      CHECK(rep.injective);
      CHECK(rep.surjective);
      CHECK(rep.passed);
    }
  }
}

TEST_CASE("essential image closure under tensor, kernels, cokernels, extensions") {
  for (BaseField f : {prime_field(5), rationals_field()}) {
    PatchingContext pc = bl_context(f);
    Rng rng(23);
    ClosureReport rep = check_essential_image_closures(pc, rng, 3, 1, 2);
    CHECK(rep.tensor_closed);
    CHECK(rep.kernel_closed);
    CHECK(rep.cokernel_closed);
    CHECK(rep.extension_closed);
    CHECK(rep.passed);
  }
}

TEST_CASE("lane base change is faithfully flat on candidate sequences") {
  BaseField f5 = prime_field(5);
  PatchingContext pc = bl_context(f5);
  RingDesc kt = ring_poly(f5);
  PresentedModule r1 = free_module(kt, 1);
  PresentedModule tors = cyclic(kt, RingElem::t(kt));

  std::vector<std::pair<ModuleMap, ModuleMap>> sequences;
  // exact: 0 -> k[t] --t--> k[t] -> k[t]/(t) -> 0
  sequences.emplace_back(ModuleMap(r1, r1, mat1(RingElem::t(kt))),
                         ModuleMap(r1, tors, mat1(RingElem::one(kt))));
  // not exact: the identity composed with itself
  sequences.emplace_back(ModuleMap::identity(r1), ModuleMap::identity(r1));
  // not exact in the middle: t^2 then the quotient by (t)
  sequences.emplace_back(ModuleMap(r1, r1, mat1(RingElem::t_power(kt, 2))),
                         ModuleMap(r1, tors, mat1(RingElem::one(kt))));

  FlatnessReport rep = check_faithful_flatness(pc, sequences);
  CHECK(rep.samples == 3);
  CHECK(rep.disagreements == 0);
  CHECK(rep.passed);
}

TEST_CASE("gluing rejects objects from a different context") {
  PatchingContext p5 = bl_context(prime_field(5));
  PatchingContext pq = bl_context(rationals_field());
  EqObject u = eq_unit(pq.eq);
  CHECK_THROWS_AS(glue(p5, u), ContextMismatch);
}

}  // TEST_SUITE
