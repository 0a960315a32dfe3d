#pragma once

#include <optional>
#include <vector>

#include "patchcat/matrix.hpp"
#include "patchcat/rng.hpp"

namespace patchcat {

/// Finitely presented module coker(R^r -> R^g) given by its g x r relation
/// matrix. Object equality is presentation equality; isomorphism is the
/// separate decidable test below.
struct PresentedModule {
  RingDesc ring;
  Mat rel;  // g x r

  PresentedModule(RingDesc r, Mat relations);
  int generators() const { return rel.rows(); }
  bool operator==(const PresentedModule& o) const {
    return ring == o.ring && rel == o.rel;
  }
  bool operator!=(const PresentedModule& o) const { return !(*this == o); }
};

PresentedModule free_module(const RingDesc& r, int rank);
PresentedModule zero_module(const RingDesc& r);
/// R/(a).
PresentedModule cyclic_module(const RingElem& a);

/// Map of presented modules, stored with a witness that the matrix carries
/// source relations into target relations (A * rel_S = rel_T * witness).
class ModuleMap {
 public:
  /// Validates well-definedness and computes the witness; throws ShapeError
  /// when the matrix does not induce a map on the quotients.
  ModuleMap(PresentedModule source, PresentedModule target, Mat a);
  /// Trusted constructor with an explicit witness (checked cheaply).
  ModuleMap(PresentedModule source, PresentedModule target, Mat a, Mat witness);

  static ModuleMap identity(const PresentedModule& m);
  static ModuleMap zero(const PresentedModule& source, const PresentedModule& target);

  const PresentedModule& source() const { return source_; }
  const PresentedModule& target() const { return target_; }
  const Mat& matrix() const { return a_; }
  const Mat& witness() const { return w_; }

 private:
  PresentedModule source_, target_;
  Mat a_, w_;
};

/// f after g.
ModuleMap compose(const ModuleMap& f, const ModuleMap& g);
ModuleMap map_sum(const ModuleMap& f, const ModuleMap& g);        // same source/target
ModuleMap map_difference(const ModuleMap& f, const ModuleMap& g);
/// Equality as maps of quotients: every column of the difference lies in the
/// image of the target relations.
bool maps_equal(const ModuleMap& f, const ModuleMap& g);
bool is_zero_map(const ModuleMap& f);

/// Kernel/cokernel with their universal maps.
struct ModuleWithMap {
  PresentedModule module;
  ModuleMap map;  // kernel: incl K -> source; cokernel: proj target -> coker
};
ModuleWithMap kernel(const ModuleMap& f);
ModuleWithMap cokernel(const ModuleMap& f);

bool is_zero_module(const PresentedModule& m);
bool is_injective(const ModuleMap& f);
bool is_surjective(const ModuleMap& f);
/// Exactness of the two-step complex at the middle object (requires
/// compose(g, f) = 0).
bool is_exact_pair(const ModuleMap& f, const ModuleMap& g);

/// Direct sum with the four structural maps.
struct DirectSum {
  PresentedModule module;
  ModuleMap inj0, inj1, proj0, proj1;
};
DirectSum direct_sum(const PresentedModule& a, const PresentedModule& b);

/// Tensor product: generators are ordered pairs flattened row-major
/// ((i, j) -> i * g_N + j), relations from both factors. Presentations are
/// strict, so the associator below is literally an identity matrix.
PresentedModule tensor(const PresentedModule& m, const PresentedModule& n);
ModuleMap tensor_map(const ModuleMap& f, const ModuleMap& g);
PresentedModule unit_module(const RingDesc& r);  // free rank 1
ModuleMap associator(const PresentedModule& a, const PresentedModule& b,
                     const PresentedModule& c);  // (a@b)@c -> a@(b@c)
ModuleMap braiding(const PresentedModule& a, const PresentedModule& b);  // a@b -> b@a
ModuleMap left_unit(const PresentedModule& m);    // 1@m -> m
ModuleMap right_unit(const PresentedModule& m);   // m@1 -> m

/// Canonical decomposition: torsion cyclic summands R/(d_1) | ... | R/(d_k)
/// (canonical associates, divisibility chain, no unit or zero divisors kept)
/// followed by free_rank copies of R, with mutually inverse witnesses.
struct CanonicalForm {
  std::vector<RingElem> torsion;
  int free_rank = 0;
  PresentedModule canonical;
  ModuleMap to_canonical;    // m -> canonical
  ModuleMap from_canonical;  // canonical -> m
};
CanonicalForm canonical_form(const PresentedModule& m);

/// Invariant factors as (torsion divisors, free rank).
std::pair<std::vector<RingElem>, int> invariant_factors(const PresentedModule& m);

/// Isomorphism test via invariant factors; returns an explicit isomorphism
/// on success.
std::optional<ModuleMap> is_isomorphic(const PresentedModule& m, const PresentedModule& n);

/// Hom(M, N) as a presented module together with module maps realizing its
/// generators; hom_basis[k] corresponds to the k-th generator.
struct HomDescription {
  PresentedModule module;
  std::vector<ModuleMap> basis;
};
HomDescription hom_module(const PresentedModule& m, const PresentedModule& n);

/// Writes f as a combination sum_k c_k * basis[k] modulo maps that vanish on
/// the quotient; nullopt when f is not in the span (never happens for a
/// basis produced by hom_module).
std::optional<std::vector<RingElem>> express_in_hom_basis(
    const ModuleMap& f, const std::vector<ModuleMap>& basis);

/// Base change along a ring homomorphism: applies the hom entrywise to the
/// presentation (strict, so functoriality is on-the-nose).
PresentedModule base_change(const RingHom& h, const PresentedModule& m);
ModuleMap base_change(const RingHom& h, const ModuleMap& f);

/// Samplers for the property suites.
PresentedModule random_module(Rng& rng, const RingDesc& r, int max_generators,
                              int max_degree, int height = 5);
ModuleMap random_map(Rng& rng, const PresentedModule& source,
                     const PresentedModule& target, int max_degree, int height = 5);

}  // namespace patchcat
