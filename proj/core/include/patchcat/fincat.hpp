#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "patchcat/errors.hpp"

namespace patchcat {

/// Finite category given by object ids 0..n_objects-1 and morphism ids with
/// source/target/identity tables and a full composition table. Construction
/// checks all axioms exhaustively.
class FinCat {
 public:
  /// comp is flat n_mor x n_mor, comp[g * n_mor + f] = g after f, -1 when
  /// the pair is not composable.
  FinCat(int n_objects, std::vector<int> src, std::vector<int> dst,
         std::vector<int> identity, std::vector<int> comp);

  int objects() const { return n_objects_; }
  int morphisms() const { return static_cast<int>(src_.size()); }
  int src(int f) const { return src_[static_cast<std::size_t>(f)]; }
  int dst(int f) const { return dst_[static_cast<std::size_t>(f)]; }
  int identity(int obj) const { return id_[static_cast<std::size_t>(obj)]; }
  bool composable(int g, int f) const { return dst(f) == src(g); }
  /// g after f.
  int compose(int g, int f) const;
  bool is_identity(int f) const { return id_[static_cast<std::size_t>(src(f))] == f; }
  std::optional<int> inverse_of(int f) const;
  bool is_iso(int f) const { return inverse_of(f).has_value(); }
  /// Morphisms from a to b in id order.
  std::vector<int> hom(int a, int b) const;

  bool operator==(const FinCat& o) const;
  bool operator!=(const FinCat& o) const { return !(*this == o); }

 private:
  int n_objects_;
  std::vector<int> src_, dst_, id_, comp_;
  void validate() const;
};

FinCat discrete_category(int n);
/// One object, morphisms {id, s} with s*s = id.
FinCat group_z2();
/// One object with morphism set Z/n under addition (identity 0).
FinCat cyclic_group_category(int n);
/// Two objects 0, 1 and one non-identity morphism 0 -> 1.
FinCat arrow_category();
/// Two objects with a single isomorphism between them.
FinCat walking_isomorphism();

/// Full subcategory on the listed objects (deterministic reindexing).
FinCat full_subcategory(const FinCat& c, const std::vector<int>& objects);
/// Removes one non-identity morphism when the result is still a category
/// (closure under composition survives); nullopt otherwise.
std::optional<FinCat> remove_morphism(const FinCat& c, int m);

/// Functor between finite categories; all preservation axioms checked
/// exhaustively on construction.
class FinFunctor {
 public:
  FinFunctor(FinCat source, FinCat target, std::vector<int> obj_map,
             std::vector<int> mor_map);
  static FinFunctor identity(const FinCat& c);

  const FinCat& source() const { return source_; }
  const FinCat& target() const { return target_; }
  int obj(int a) const { return obj_[static_cast<std::size_t>(a)]; }
  int mor(int f) const { return mor_[static_cast<std::size_t>(f)]; }
  const std::vector<int>& obj_map() const { return obj_; }
  const std::vector<int>& mor_map() const { return mor_; }

  bool operator==(const FinFunctor& o) const;
  bool operator!=(const FinFunctor& o) const { return !(*this == o); }

 private:
  FinCat source_, target_;
  std::vector<int> obj_, mor_;
};

/// outer after inner.
FinFunctor compose(const FinFunctor& outer, const FinFunctor& inner);

/// Brute-force enumeration of every functor a -> b, in deterministic
/// lexicographic assignment order. Throws BudgetExceeded past max_steps.
std::vector<FinFunctor> all_functors(const FinCat& a, const FinCat& b,
                                     long max_steps = 20000000);

/// Deterministic catalog of parallel pairs (d0, d1: C0 -> C1) between small
/// catalog categories, in a fixed order, for verification suites.
std::vector<std::pair<FinFunctor, FinFunctor>> parallel_pair_catalog(int count);

/// Natural transformation with exhaustively checked naturality squares.
class FinNatTrans {
 public:
  FinNatTrans(FinFunctor source, FinFunctor target, std::vector<int> components);

  const FinFunctor& source() const { return source_; }
  const FinFunctor& target() const { return target_; }
  int component(int obj) const { return comp_[static_cast<std::size_t>(obj)]; }
  const std::vector<int>& components() const { return comp_; }
  bool all_iso() const;

  bool operator==(const FinNatTrans& o) const;

 private:
  FinFunctor source_, target_;
  std::vector<int> comp_;
};

/// The equalizer category of a parallel pair d0, d1: C0 -> C1: objects are
/// pairs (a, phi) with phi: d1(a) -> d0(a) an isomorphism, morphisms the
/// C0 morphisms making the evident square commute.
struct EqualizerCat {
  FinCat eq;
  FinFunctor projection;   // Eq -> C0
  FinNatTrans structure;   // d1 o projection -> d0 o projection, (a,phi) |-> phi
  std::vector<std::pair<int, int>> object_pairs;  // (a, phi) per Eq object
  std::vector<int> underlying_morphism;           // C0 morphism per Eq morphism
};
EqualizerCat build_equalizer_cat(const FinFunctor& d0, const FinFunctor& d1);

struct EnumerationBudget {
  int max_objects = 4;
  int max_morphisms = 24;
  long max_steps = 20000000;
};

/// Outcome of the brute-force universal property check against one test
/// category: counts on both sides of the functor bijection, the natural
/// transformation bijection over all functor pairs, and how often the
/// literally-labelled compatibility square (with the two whiskered legs
/// swapped) disagrees with the naturality-square form whenever both
/// typecheck.
struct UniversalPropertyReport {
  int functors_into_equalizer = 0;
  int functor_pairs = 0;  // (F0, beta) count
  bool functor_bijection = false;
  long nat_trans_direct = 0;
  long nat_trans_pairs = 0;
  bool nat_trans_bijection = false;
  long label_order_mismatches = 0;
  bool passed = false;
  std::string detail;
};

UniversalPropertyReport verify_universal_property(const FinFunctor& d0,
                                                  const FinFunctor& d1,
                                                  const FinCat& test,
                                                  const EnumerationBudget& budget = {});

/// Same check against a caller-supplied equalizer candidate (used by the
/// mutation tests, which pass deliberately damaged categories).
UniversalPropertyReport verify_candidate_equalizer(const FinFunctor& d0,
                                                   const FinFunctor& d1,
                                                   const EqualizerCat& candidate,
                                                   const FinCat& test,
                                                   const EnumerationBudget& budget = {});

}  // namespace patchcat
