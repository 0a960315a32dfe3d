#include <doctest.h>

#include "helpers.hpp"
#include "patchcat/patching.hpp"
#include "patchcat/rng.hpp"

using namespace patchcat;
using namespace patchcat::testing;

namespace {

EqObject unit_like(const PatchingContext& pc) { return eq_unit(pc.eq); }

EqMorphism scalar_times_t(const PatchingContext& pc) {
  EqObject u = unit_like(pc);
  std::vector<ModuleMap> parts;
  for (int lane = 0; lane < 2; ++lane) {
    const PresentedModule& c = u.part(lane);
    parts.emplace_back(c, c, mat1(RingElem::t(c.ring)));
  }
  return EqMorphism(u, u, parts);
}

}  // namespace

TEST_SUITE("equalizer") {

TEST_CASE("cokernel of multiplication by t is a skyscraper at the origin") {
  PatchingContext pc = bl_context(prime_field(5));
  EqObjectWithMap c = eq_cokernel(scalar_times_t(pc));
  // local lane: k[t]_(t)/(t) is torsion with invariant t; laurent lane: 0
  auto [tors0, rank0] = invariant_factors(c.object.part(0));
  REQUIRE(tors0.size() == 1);
  CHECK(tors0[0] == RingElem::t(c.object.part(0).ring));
  CHECK(rank0 == 0);
  auto [tors1, rank1] = invariant_factors(c.object.part(1));
  CHECK(tors1.empty());
  CHECK(rank1 == 0);
  CHECK(is_zero_map(compose(c.map, scalar_times_t(pc))));
}

TEST_CASE("kernel of multiplication by t vanishes") {
  PatchingContext pc = bl_context(rationals_field());
  EqObjectWithMap k = eq_kernel(scalar_times_t(pc));
  for (int lane = 0; lane < 2; ++lane) {
    auto [tors, rank] = invariant_factors(k.object.part(lane));
    CHECK(tors.empty());
    CHECK(rank == 0);
  }
}

TEST_CASE("direct sum satisfies the biproduct identities") {
  PatchingContext pc = bl_context(prime_field(5));
  Rng rng(41);
  EqObject x = random_eq_object(rng, pc.eq, 2, 2);
  EqObject y = random_eq_object(rng, pc.eq, 2, 2);
  EqDirectSum s = eq_direct_sum(x, y);
  CHECK(maps_equal(compose(s.proj0, s.inj0), EqMorphism::identity(x)));
  CHECK(maps_equal(compose(s.proj1, s.inj1), EqMorphism::identity(y)));
  CHECK(is_zero_map(compose(s.proj0, s.inj1)));
  CHECK(is_zero_map(compose(s.proj1, s.inj0)));
  EqMorphism resolution = map_sum(compose(s.inj0, s.proj0), compose(s.inj1, s.proj1));
  CHECK(maps_equal(resolution, EqMorphism::identity(s.object)));
}

TEST_CASE("monoidal coherence holds on random triples") {
  for (BaseField f : {prime_field(5), rationals_field()}) {
    PatchingContext pc = bl_context(f);
    Rng rng(7);
    for (int i = 0; i < 3; ++i) {
      EqObject x = random_eq_object(rng, pc.eq, 1, 2);
      EqObject y = random_eq_object(rng, pc.eq, 1, 2);
      EqObject z = random_eq_object(rng, pc.eq, 1, 2);
      CoherenceReport rep = check_coherence(x, y, z);
      CHECK(rep.pentagon);
      CHECK(rep.triangle);
      CHECK(rep.hexagon);
      CHECK(rep.glue_monoidal);
      CHECK(rep.passed);
    }
  }
}

TEST_CASE("a sign-flipped associator breaks the pentagon") {
  PatchingContext pc = bl_context(prime_field(5));
  // unit-object probes keep every canonical coherence path visibly nonzero
  EqObject x = eq_unit(pc.eq), y = eq_unit(pc.eq), z = eq_unit(pc.eq);
  MonoidalOps ops = MonoidalOps::canonical();
  ops.assoc = [](const EqObject& a, const EqObject& b, const EqObject& c) {
    EqMorphism good = eq_associator(a, b, c);
    return map_difference(EqMorphism::zero(good.source(), good.target()), good);
  };
  CoherenceReport rep = check_coherence(x, y, z, ops);
  CHECK(!rep.passed);
  CHECK(!rep.pentagon);
}

TEST_CASE("a sign-flipped braiding breaks the hexagon") {
  PatchingContext pc = bl_context(prime_field(5));
  EqObject x = eq_unit(pc.eq), y = eq_unit(pc.eq), z = eq_unit(pc.eq);
  MonoidalOps ops = MonoidalOps::canonical();
  ops.braid = [](const EqObject& a, const EqObject& b) {
    EqMorphism good = eq_braiding(a, b);
    return map_difference(EqMorphism::zero(good.source(), good.target()), good);
  };
  CoherenceReport rep = check_coherence(x, y, z, ops);
  CHECK(!rep.passed);
}

TEST_CASE("random extensions are short exact on both sides") {
  for (BaseField f : {prime_field(5), rationals_field()}) {
    PatchingContext pc = bl_context(f);
    Rng rng(17);
    for (int i = 0; i < 4; ++i) {
      EqObject x = random_eq_object(rng, pc.eq, 1, 2);
      EqObject y = random_eq_object(rng, pc.eq, 1, 2);
      EqExtension ext = random_eq_extension(rng, x, y, 2);
      ExactnessReport rep = check_faithful_exactness(ext.incl, ext.proj);
      CHECK(rep.composite_zero);
      CHECK(rep.carriers_exact);
      CHECK(rep.eq_exact);
      CHECK(rep.sides_agree);
      CHECK(rep.passed);
    }
  }
}

TEST_CASE("both exactness verdicts agree on a non-exact candidate") {
  PatchingContext pc = bl_context(prime_field(5));
  Rng rng(19);
  EqObject x = random_eq_object(rng, pc.eq, 1, 2);
  EqObject y = random_eq_object(rng, pc.eq, 1, 2);
  EqExtension ext = random_eq_extension(rng, x, y, 2);
  // zeroing the projection keeps the composite zero but kills surjectivity
  ExactnessReport rep = check_faithful_exactness(
      ext.incl, EqMorphism::zero(ext.total, ext.proj.target()));
  CHECK(rep.composite_zero);
  CHECK(!rep.eq_exact);
  CHECK(!rep.carriers_exact);
  CHECK(rep.sides_agree);
}

TEST_CASE("a nonzero composite is reported") {
  PatchingContext pc = bl_context(prime_field(5));
  EqObject u = unit_like(pc);
  ExactnessReport rep = check_faithful_exactness(EqMorphism::identity(u),
                                                 EqMorphism::identity(u));
  CHECK(!rep.composite_zero);
  CHECK(!rep.passed);
}

TEST_CASE("glue isomorphisms are validated at construction") {
  PatchingContext pc = bl_context(prime_field(5));
  EqObject u = unit_like(pc);
  RingDesc overlap = u.glue().matrix().ring();
  // a non-invertible overlap matrix is rejected
  CHECK_THROWS_AS(EqObject(pc.eq, {u.part(0), u.part(1)},
                           ModuleMap(u.glue().source(), u.glue().target(),
                                     mat1(RingElem::zero(overlap)))),
                  NonInvertible);
}

}  // TEST_SUITE
