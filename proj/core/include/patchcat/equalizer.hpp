#pragma once

#include <functional>
#include <string>
#include <vector>

#include "patchcat/module.hpp"

namespace patchcat {

/// A parallel pair of base-change functors out of a product of module
/// categories. The source ring is the product of the lane rings; a module
/// over it is one presented module per lane. Both functors land in modules
/// over r1: the first pulls lane `lane0` back along h0, the second pulls
/// lane `lane1` back along h1.
struct EqContext {
  std::vector<RingDesc> lanes;
  RingDesc r1;
  int lane0, lane1;
  RingHom h0, h1;

  int lane_count() const { return static_cast<int>(lanes.size()); }
  bool operator==(const EqContext& o) const;
  bool operator!=(const EqContext& o) const { return !(*this == o); }
};

EqContext make_eq_context(std::vector<RingDesc> lanes, RingDesc r1, int lane0,
                          int lane1, RingHom h0, RingHom h1);
/// Both functors the identity on modules over r: the equalizer degenerates
/// to the module category itself.
EqContext identity_context(const RingDesc& r);

/// Finds a two-sided inverse of f modulo relations, or nullopt.
std::optional<ModuleMap> invert_module_map(const ModuleMap& f);

/// Object of the equalizer category: a lane-indexed carrier plus a gluing
/// isomorphism glue: d1*(carrier) -> d0*(carrier) with a stored inverse.
class EqObject {
 public:
  EqObject(EqContext ctx, std::vector<PresentedModule> carrier, ModuleMap glue,
           ModuleMap glue_inv);
  /// Computes the inverse witness (throws NonInvertible when glue is not an
  /// isomorphism).
  EqObject(EqContext ctx, std::vector<PresentedModule> carrier, ModuleMap glue);

  const EqContext& ctx() const { return ctx_; }
  const std::vector<PresentedModule>& carrier() const { return carrier_; }
  const PresentedModule& part(int lane) const { return carrier_[static_cast<std::size_t>(lane)]; }
  const ModuleMap& glue() const { return glue_; }
  const ModuleMap& glue_inv() const { return glue_inv_; }
  /// Base changes of the relevant lanes.
  PresentedModule d0_carrier() const;
  PresentedModule d1_carrier() const;

 private:
  EqContext ctx_;
  std::vector<PresentedModule> carrier_;
  ModuleMap glue_, glue_inv_;
  void validate() const;
};

/// Morphism of the equalizer category: lanewise carrier maps whose base
/// changes commute with the gluing isomorphisms (checked on construction).
class EqMorphism {
 public:
  EqMorphism(EqObject source, EqObject target, std::vector<ModuleMap> parts);

  static EqMorphism identity(const EqObject& x);
  static EqMorphism zero(const EqObject& source, const EqObject& target);

  const EqObject& source() const { return source_; }
  const EqObject& target() const { return target_; }
  const std::vector<ModuleMap>& parts() const { return parts_; }
  const ModuleMap& part(int lane) const { return parts_[static_cast<std::size_t>(lane)]; }

 private:
  EqObject source_, target_;
  std::vector<ModuleMap> parts_;
};

EqMorphism compose(const EqMorphism& f, const EqMorphism& g);  // f after g
EqMorphism map_sum(const EqMorphism& f, const EqMorphism& g);
EqMorphism map_difference(const EqMorphism& f, const EqMorphism& g);
bool maps_equal(const EqMorphism& f, const EqMorphism& g);
bool is_zero_map(const EqMorphism& f);
/// Lanewise isomorphism test (sufficient: glue compatibility is inherited).
bool is_isomorphism(const EqMorphism& f);

struct EqObjectWithMap {
  EqObject object;
  EqMorphism map;
};

/// Kernel/cokernel: carriers lanewise, the induced gluing isomorphism solved
/// for as the unique map making the defining square commute. Throws
/// InternalCheckFailure when the solve has no solution or is not unique
/// (either signals an exactness bug upstream).
EqObjectWithMap eq_kernel(const EqMorphism& f);
EqObjectWithMap eq_cokernel(const EqMorphism& f);

/// Monoidal structure: carriers tensor lanewise; the base-change functors
/// are strict, so the glue of a tensor is the tensor of the glues.
EqObject eq_tensor(const EqObject& x, const EqObject& y);
EqObject eq_unit(const EqContext& ctx);
EqMorphism eq_tensor_map(const EqMorphism& f, const EqMorphism& g);
EqMorphism eq_associator(const EqObject& x, const EqObject& y, const EqObject& z);
EqMorphism eq_braiding(const EqObject& x, const EqObject& y);
EqMorphism eq_left_unit(const EqObject& x);
EqMorphism eq_right_unit(const EqObject& x);
/// Direct sum with injections; glue is block diagonal.
struct EqDirectSum {
  EqObject object;
  EqMorphism inj0, inj1, proj0, proj1;
};
EqDirectSum eq_direct_sum(const EqObject& x, const EqObject& y);

/// Overridable structure hooks so the coherence checker can be run against
/// deliberately damaged structure maps (mutation testing).
struct MonoidalOps {
  std::function<EqObject(const EqObject&, const EqObject&)> tensor;
  std::function<EqMorphism(const EqObject&, const EqObject&, const EqObject&)> assoc;
  std::function<EqMorphism(const EqObject&, const EqObject&)> braid;
  std::function<EqMorphism(const EqObject&)> left_unit;
  std::function<EqMorphism(const EqObject&)> right_unit;
  static MonoidalOps canonical();
};

struct CoherenceReport {
  bool pentagon = false;
  bool triangle = false;
  bool hexagon = false;
  bool glue_monoidal = false;  // glue(x@y) against glue_x @ glue_y
  bool passed = false;
  std::string detail;
};
/// Exact evaluation of the pentagon (fourth object = x), triangle, hexagon,
/// and multiplicativity of the gluing isomorphisms on the given triple.
CoherenceReport check_coherence(const EqObject& x, const EqObject& y,
                                const EqObject& z,
                                const MonoidalOps& ops = MonoidalOps::canonical());

struct ExactnessReport {
  bool composite_zero = false;
  bool carriers_exact = false;  // lanewise short-exactness of the carriers
  bool eq_exact = false;        // short-exactness computed inside the equalizer
  bool sides_agree = false;
  bool passed = false;  // composite zero, both sides hold, verdicts agree
  std::string detail;
};
/// Compares short-exactness measured inside the equalizer category (via
/// eq_kernel / eq_cokernel) with lanewise short-exactness of the carriers.
ExactnessReport check_faithful_exactness(const EqMorphism& f, const EqMorphism& g);

/// Random object with matched lane ranks so a gluing isomorphism exists;
/// torsion summands are allowed in every lane.
EqObject random_eq_object(Rng& rng, const EqContext& ctx, int max_rank,
                          int max_degree, int height = 5);
/// Random extension of y by x (block upper-triangular glue) with the
/// inclusion and projection; always a short exact sequence.
struct EqExtension {
  EqObject total;
  EqMorphism incl;  // x -> total
  EqMorphism proj;  // total -> y
};
EqExtension random_eq_extension(Rng& rng, const EqObject& x, const EqObject& y,
                                int max_degree, int height = 5);

}  // namespace patchcat
