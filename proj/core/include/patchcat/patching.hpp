#pragma once

#include <string>
#include <utility>
#include <vector>

#include "patchcat/equalizer.hpp"

namespace patchcat {

/// Commuting gluing diagram of rings: a global ring r, one map d[i] from r
/// into every lane of an equalizer context, such that the two composites
/// r -> r1 through the distinguished lanes agree (checked on construction).
struct PatchingContext {
  RingDesc r;
  EqContext eq;
  std::vector<RingHom> d;  // one per lane, r -> eq.lanes[i]

  bool operator==(const PatchingContext& o) const;
  bool operator!=(const PatchingContext& o) const { return !(*this == o); }
};
PatchingContext make_patching_context(RingDesc r, EqContext eq, std::vector<RingHom> d);

/// k[t] glued from its localization at the origin and the ring of Laurent
/// polynomials, compared inside k(t).
PatchingContext bl_context(BaseField k);

/// Canonical gluing functor: base change the module (or map) into every
/// lane. The comparison isomorphism of the two pullbacks to r1 is the
/// identity matrix because base change acts entrywise on presentations.
EqObject restrict_module(const PatchingContext& ctx, const PresentedModule& m);
EqMorphism restrict_map(const PatchingContext& ctx, const ModuleMap& f);

/// Descent along the gluing diagram of bl_context: presents the compatible
/// pairs of lane elements as a module over k[t] and returns the witness
/// isomorphism restrict_module(ctx, module) -> x. Only the bl_context shape
/// is supported (throws UnsupportedRing otherwise).
struct GluedModule {
  PresentedModule module;
  EqMorphism iso;
};
GluedModule glue(const PatchingContext& ctx, const EqObject& x);

struct FullFaithfulnessReport {
  bool natural_map_defined = false;  // hom comparison assembles over k[t]
  bool invariants_match = false;     // glued hom module vs hom over k[t]
  bool injective = false;
  bool surjective = false;
  bool passed = false;
  std::string detail;
};
/// Verifies that restriction Hom(m, n) -> Hom(restrict m, restrict n) is
/// bijective: glues the lanewise hom modules into a k[t]-module and checks
/// the natural comparison map is an isomorphism.
FullFaithfulnessReport check_full_faithfulness(const PatchingContext& ctx,
                                               const PresentedModule& m,
                                               const PresentedModule& n);

struct ClosureReport {
  int samples = 0;
  bool tensor_closed = false;
  bool kernel_closed = false;
  bool cokernel_closed = false;
  bool extension_closed = false;
  bool passed = false;
  std::string detail;
};
/// Verifies the essential image of restrict_module is closed under tensor,
/// kernels, cokernels and extensions by exhibiting a preimage via glue for
/// each randomly sampled instance.
ClosureReport check_essential_image_closures(const PatchingContext& ctx, Rng& rng,
                                             int samples, int max_rank, int max_degree);

struct FlatnessReport {
  int samples = 0;
  int disagreements = 0;
  bool passed = false;
  std::string detail;
};
/// For every candidate two-step sequence over ctx.r, short-exactness over
/// ctx.r must coincide with joint short-exactness of the lane base changes
/// (preservation and reflection in one clause).
FlatnessReport check_faithful_flatness(
    const PatchingContext& ctx,
    const std::vector<std::pair<ModuleMap, ModuleMap>>& sequences);

}  // namespace patchcat
