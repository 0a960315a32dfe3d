#include "patchcat/fincat.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace patchcat {

FinCat::FinCat(int n_objects, std::vector<int> src, std::vector<int> dst,
               std::vector<int> identity, std::vector<int> comp)
    : n_objects_(n_objects), src_(std::move(src)), dst_(std::move(dst)),
      id_(std::move(identity)), comp_(std::move(comp)) {
  validate();
}

void FinCat::validate() const {
  int nm = morphisms();
  if (n_objects_ < 0 || static_cast<int>(dst_.size()) != nm ||
      static_cast<int>(id_.size()) != n_objects_ ||
      static_cast<int>(comp_.size()) != nm * nm)
    throw ShapeError("category table sizes inconsistent");
  for (int f = 0; f < nm; ++f)
    if (src_[f] < 0 || src_[f] >= n_objects_ || dst_[f] < 0 || dst_[f] >= n_objects_)
      throw ShapeError("morphism endpoints out of range");
  for (int o = 0; o < n_objects_; ++o) {
    int e = id_[o];
    if (e < 0 || e >= nm || src_[e] != o || dst_[e] != o)
      throw ShapeError("identity table invalid");
  }
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f) {
      int c = comp_[static_cast<std::size_t>(g) * nm + f];
      if (dst_[f] != src_[g]) {
        if (c != -1) throw ShapeError("composite defined for non-composable pair");
        continue;
      }
      if (c < 0 || c >= nm || src_[c] != src_[f] || dst_[c] != dst_[g])
        throw ShapeError("composite endpoints invalid");
    }
  for (int f = 0; f < nm; ++f) {
    if (compose(id_[dst_[f]], f) != f || compose(f, id_[src_[f]]) != f)
      throw ShapeError("identity is not neutral");
  }
  for (int h = 0; h < nm; ++h)
    for (int g = 0; g < nm; ++g) {
      if (src_[h] != dst_[g]) continue;
      for (int f = 0; f < nm; ++f) {
        if (src_[g] != dst_[f]) continue;
        if (compose(h, compose(g, f)) != compose(compose(h, g), f))
          throw ShapeError("composition is not associative");
      }
    }
}

int FinCat::compose(int g, int f) const {
  if (!composable(g, f)) throw ShapeError("morphisms not composable");
  return comp_[static_cast<std::size_t>(g) * morphisms() + f];
}

std::optional<int> FinCat::inverse_of(int f) const {
  for (int g : hom(dst(f), src(f)))
    if (compose(g, f) == identity(src(f)) && compose(f, g) == identity(dst(f)))
      return g;
  return std::nullopt;
}

std::vector<int> FinCat::hom(int a, int b) const {
  std::vector<int> out;
  for (int f = 0; f < morphisms(); ++f)
    if (src(f) == a && dst(f) == b) out.push_back(f);
  return out;
}

bool FinCat::operator==(const FinCat& o) const {
  return n_objects_ == o.n_objects_ && src_ == o.src_ && dst_ == o.dst_ &&
         id_ == o.id_ && comp_ == o.comp_;
}

FinCat discrete_category(int n) {
  std::vector<int> src(static_cast<std::size_t>(n)), dst(static_cast<std::size_t>(n)),
      id(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) src[static_cast<std::size_t>(i)] = dst[static_cast<std::size_t>(i)] = id[static_cast<std::size_t>(i)] = i;
  std::vector<int> comp(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) comp[static_cast<std::size_t>(i) * n + i] = i;
  return FinCat(n, src, dst, id, comp);
}

FinCat group_z2() {
  // morphisms: 0 = id, 1 = s with s*s = id
  return FinCat(1, {0, 0}, {0, 0}, {0}, {0, 1, 1, 0});
}

FinCat cyclic_group_category(int n) {
  if (n < 1) throw ShapeError("cyclic group order must be positive");
  std::vector<int> src(static_cast<std::size_t>(n), 0);
  std::vector<int> comp;
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f) comp.push_back((g + f) % n);
  return FinCat(1, src, src, {0}, std::move(comp));
}

FinCat arrow_category() {
  // morphisms: 0 = id_0, 1 = id_1, 2: 0 -> 1
  std::vector<int> comp = {
      0, -1, -1,   // 0 after {0,1,2}
      -1, 1, 2,    // 1 after ...
      2, -1, -1,   // 2 after ...
  };
  return FinCat(2, {0, 1, 0}, {0, 1, 1}, {0, 1}, comp);
}

FinCat walking_isomorphism() {
  // morphisms: 0 = id_0, 1 = id_1, 2: 0 -> 1, 3: 1 -> 0
  std::vector<int> comp = {
      0, -1, -1, 3,    // 0 after
      -1, 1, 2, -1,    // 1 after
      2, -1, -1, 1,    // 2 after
      -1, 3, 0, -1,    // 3 after
  };
  return FinCat(2, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 1}, comp);
}

FinCat full_subcategory(const FinCat& c, const std::vector<int>& objects) {
  std::vector<int> obj_new(static_cast<std::size_t>(c.objects()), -1);
  for (int i = 0; i < static_cast<int>(objects.size()); ++i)
    obj_new[static_cast<std::size_t>(objects[static_cast<std::size_t>(i)])] = i;
  std::vector<int> keep, mor_new(static_cast<std::size_t>(c.morphisms()), -1);
  for (int f = 0; f < c.morphisms(); ++f)
    if (obj_new[static_cast<std::size_t>(c.src(f))] >= 0 && obj_new[static_cast<std::size_t>(c.dst(f))] >= 0) {
      mor_new[static_cast<std::size_t>(f)] = static_cast<int>(keep.size());
      keep.push_back(f);
    }
  int n = static_cast<int>(objects.size()), nm = static_cast<int>(keep.size());
  std::vector<int> src(static_cast<std::size_t>(nm)), dst(static_cast<std::size_t>(nm)), id(static_cast<std::size_t>(n)),
      comp(static_cast<std::size_t>(nm) * nm, -1);
  for (int f = 0; f < nm; ++f) {
    src[static_cast<std::size_t>(f)] = obj_new[static_cast<std::size_t>(c.src(keep[static_cast<std::size_t>(f)]))];
    dst[static_cast<std::size_t>(f)] = obj_new[static_cast<std::size_t>(c.dst(keep[static_cast<std::size_t>(f)]))];
  }
  for (int o = 0; o < n; ++o)
    id[static_cast<std::size_t>(o)] = mor_new[static_cast<std::size_t>(c.identity(objects[static_cast<std::size_t>(o)]))];
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f)
      if (dst[static_cast<std::size_t>(f)] == src[static_cast<std::size_t>(g)])
        comp[static_cast<std::size_t>(g) * nm + f] =
            mor_new[static_cast<std::size_t>(c.compose(keep[static_cast<std::size_t>(g)], keep[static_cast<std::size_t>(f)]))];
  return FinCat(n, src, dst, id, comp);
}

std::optional<FinCat> remove_morphism(const FinCat& c, int m) {
  if (c.is_identity(m)) return std::nullopt;
  std::vector<int> keep, mor_new(static_cast<std::size_t>(c.morphisms()), -1);
  for (int f = 0; f < c.morphisms(); ++f)
    if (f != m) {
      mor_new[static_cast<std::size_t>(f)] = static_cast<int>(keep.size());
      keep.push_back(f);
    }
  int nm = static_cast<int>(keep.size());
  std::vector<int> src(static_cast<std::size_t>(nm)), dst(static_cast<std::size_t>(nm)), id(static_cast<std::size_t>(c.objects())),
      comp(static_cast<std::size_t>(nm) * nm, -1);
  for (int f = 0; f < nm; ++f) {
    src[static_cast<std::size_t>(f)] = c.src(keep[static_cast<std::size_t>(f)]);
    dst[static_cast<std::size_t>(f)] = c.dst(keep[static_cast<std::size_t>(f)]);
  }
  for (int o = 0; o < c.objects(); ++o) id[static_cast<std::size_t>(o)] = mor_new[static_cast<std::size_t>(c.identity(o))];
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f) {
      if (dst[static_cast<std::size_t>(f)] != src[static_cast<std::size_t>(g)]) continue;
      int composite = c.compose(keep[static_cast<std::size_t>(g)], keep[static_cast<std::size_t>(f)]);
      if (composite == m) return std::nullopt;  // closure lost
      comp[static_cast<std::size_t>(g) * nm + f] = mor_new[static_cast<std::size_t>(composite)];
    }
  try {
    return FinCat(c.objects(), src, dst, id, comp);
  } catch (const ShapeError&) {
    return std::nullopt;
  }
}

FinFunctor::FinFunctor(FinCat source, FinCat target, std::vector<int> obj_map,
                       std::vector<int> mor_map)
    : source_(std::move(source)), target_(std::move(target)),
      obj_(std::move(obj_map)), mor_(std::move(mor_map)) {
  if (static_cast<int>(obj_.size()) != source_.objects() ||
      static_cast<int>(mor_.size()) != source_.morphisms())
    throw ShapeError("functor table sizes inconsistent");
  for (int a = 0; a < source_.objects(); ++a)
    if (obj(a) < 0 || obj(a) >= target_.objects()) throw ShapeError("object map out of range");
  for (int f = 0; f < source_.morphisms(); ++f) {
    int g = mor(f);
    if (g < 0 || g >= target_.morphisms()) throw ShapeError("morphism map out of range");
    if (target_.src(g) != obj(source_.src(f)) || target_.dst(g) != obj(source_.dst(f)))
      throw ShapeError("functor breaks sources/targets");
  }
  for (int a = 0; a < source_.objects(); ++a)
    if (mor(source_.identity(a)) != target_.identity(obj(a)))
      throw ShapeError("functor breaks identities");
  for (int g = 0; g < source_.morphisms(); ++g)
    for (int f = 0; f < source_.morphisms(); ++f) {
      if (!source_.composable(g, f)) continue;
      if (mor(source_.compose(g, f)) != target_.compose(mor(g), mor(f)))
        throw ShapeError("functor breaks composition");
    }
}

FinFunctor FinFunctor::identity(const FinCat& c) {
  std::vector<int> obj(static_cast<std::size_t>(c.objects())), mor(static_cast<std::size_t>(c.morphisms()));
  for (int a = 0; a < c.objects(); ++a) obj[static_cast<std::size_t>(a)] = a;
  for (int f = 0; f < c.morphisms(); ++f) mor[static_cast<std::size_t>(f)] = f;
  return FinFunctor(c, c, std::move(obj), std::move(mor));
}

bool FinFunctor::operator==(const FinFunctor& o) const {
  return source_ == o.source_ && target_ == o.target_ && obj_ == o.obj_ && mor_ == o.mor_;
}

FinFunctor compose(const FinFunctor& outer, const FinFunctor& inner) {
  if (inner.target() != outer.source()) throw ShapeError("functors not composable");
  std::vector<int> obj(static_cast<std::size_t>(inner.source().objects()));
  std::vector<int> mor(static_cast<std::size_t>(inner.source().morphisms()));
  for (int a = 0; a < inner.source().objects(); ++a) obj[static_cast<std::size_t>(a)] = outer.obj(inner.obj(a));
  for (int f = 0; f < inner.source().morphisms(); ++f) mor[static_cast<std::size_t>(f)] = outer.mor(inner.mor(f));
  return FinFunctor(inner.source(), outer.target(), std::move(obj), std::move(mor));
}

FinNatTrans::FinNatTrans(FinFunctor source, FinFunctor target, std::vector<int> components)
    : source_(std::move(source)), target_(std::move(target)), comp_(std::move(components)) {
  if (source_.source() != target_.source() || source_.target() != target_.target())
    throw ShapeError("natural transformation endpoints mismatch");
  const FinCat& d = source_.source();
  const FinCat& e = source_.target();
  if (static_cast<int>(comp_.size()) != d.objects())
    throw ShapeError("component count mismatch");
  for (int a = 0; a < d.objects(); ++a) {
    int c = comp_[static_cast<std::size_t>(a)];
    if (c < 0 || c >= e.morphisms() || e.src(c) != source_.obj(a) || e.dst(c) != target_.obj(a))
      throw ShapeError("component endpoints invalid");
  }
  for (int f = 0; f < d.morphisms(); ++f) {
    int a = d.src(f), b = d.dst(f);
    if (e.compose(target_.mor(f), comp_[static_cast<std::size_t>(a)]) !=
        e.compose(comp_[static_cast<std::size_t>(b)], source_.mor(f)))
      throw ShapeError("naturality square fails");
  }
}

bool FinNatTrans::all_iso() const {
  const FinCat& e = source_.target();
  for (int c : comp_)
    if (!e.is_iso(c)) return false;
  return true;
}

bool FinNatTrans::operator==(const FinNatTrans& o) const {
  return source_ == o.source_ && target_ == o.target_ && comp_ == o.comp_;
}

EqualizerCat build_equalizer_cat(const FinFunctor& d0, const FinFunctor& d1) {
  if (d0.source() != d1.source() || d0.target() != d1.target())
    throw ShapeError("parallel pair endpoints mismatch");
  const FinCat& c0 = d0.source();
  const FinCat& c1 = d0.target();

  std::vector<std::pair<int, int>> objs;
  for (int a = 0; a < c0.objects(); ++a)
    for (int phi : c1.hom(d1.obj(a), d0.obj(a)))
      if (c1.is_iso(phi)) objs.emplace_back(a, phi);

  struct EqMor {
    int from, to, f;
  };
  std::vector<EqMor> mors;
  std::map<std::tuple<int, int, int>, int> index;
  for (int i = 0; i < static_cast<int>(objs.size()); ++i)
    for (int j = 0; j < static_cast<int>(objs.size()); ++j) {
      auto [a, phi] = objs[static_cast<std::size_t>(i)];
      auto [b, psi] = objs[static_cast<std::size_t>(j)];
      for (int f : c0.hom(a, b))
        if (c1.compose(d0.mor(f), phi) == c1.compose(psi, d1.mor(f))) {
          index[{i, j, f}] = static_cast<int>(mors.size());
          mors.push_back({i, j, f});
        }
    }

  int n = static_cast<int>(objs.size()), nm = static_cast<int>(mors.size());
  std::vector<int> src(static_cast<std::size_t>(nm)), dst(static_cast<std::size_t>(nm)), id(static_cast<std::size_t>(n)),
      comp(static_cast<std::size_t>(nm) * nm, -1);
  for (int m = 0; m < nm; ++m) {
    src[static_cast<std::size_t>(m)] = mors[static_cast<std::size_t>(m)].from;
    dst[static_cast<std::size_t>(m)] = mors[static_cast<std::size_t>(m)].to;
  }
  for (int i = 0; i < n; ++i) {
    auto it = index.find({i, i, c0.identity(objs[static_cast<std::size_t>(i)].first)});
    if (it == index.end()) throw InternalCheckFailure("equalizer lost an identity");
    id[static_cast<std::size_t>(i)] = it->second;
  }
  for (int g = 0; g < nm; ++g)
    for (int f = 0; f < nm; ++f) {
      if (mors[static_cast<std::size_t>(f)].to != mors[static_cast<std::size_t>(g)].from) continue;
      int cf = c0.compose(mors[static_cast<std::size_t>(g)].f, mors[static_cast<std::size_t>(f)].f);
      auto it = index.find({mors[static_cast<std::size_t>(f)].from, mors[static_cast<std::size_t>(g)].to, cf});
      if (it == index.end()) throw InternalCheckFailure("equalizer not closed under composition");
      comp[static_cast<std::size_t>(g) * nm + f] = it->second;
    }
  FinCat eq(n, src, dst, id, comp);

  std::vector<int> proj_obj(static_cast<std::size_t>(n)), proj_mor(static_cast<std::size_t>(nm));
  for (int i = 0; i < n; ++i) proj_obj[static_cast<std::size_t>(i)] = objs[static_cast<std::size_t>(i)].first;
  std::vector<int> underlying(static_cast<std::size_t>(nm));
  for (int m = 0; m < nm; ++m) {
    proj_mor[static_cast<std::size_t>(m)] = mors[static_cast<std::size_t>(m)].f;
    underlying[static_cast<std::size_t>(m)] = mors[static_cast<std::size_t>(m)].f;
  }
  FinFunctor projection(eq, c0, std::move(proj_obj), std::move(proj_mor));

  std::vector<int> alpha(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) alpha[static_cast<std::size_t>(i)] = objs[static_cast<std::size_t>(i)].second;
  FinNatTrans structure(compose(d1, projection), compose(d0, projection), std::move(alpha));

  return {std::move(eq), std::move(projection), std::move(structure), std::move(objs),
          std::move(underlying)};
}

// ---------------------------------------------------------------------------
// Brute-force enumeration.
// ---------------------------------------------------------------------------

namespace {

struct Budgeter {
  long steps = 0;
  long max_steps;
  explicit Budgeter(long m) : max_steps(m) {}
  void tick() {
    if (++steps > max_steps) throw BudgetExceeded("enumeration budget exceeded");
  }
};

// all functors d -> e as (obj_map, mor_map) pairs, in lexicographic order
std::vector<std::pair<std::vector<int>, std::vector<int>>> enumerate_functors(
    const FinCat& d, const FinCat& e, Budgeter& budget) {
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  std::vector<int> obj(static_cast<std::size_t>(d.objects()), -1);
  std::vector<int> mor(static_cast<std::size_t>(d.morphisms()), -1);

  // checks every composition whose three participants are all assigned
  auto consistent_after = [&](int assigned_mor) {
    for (int g = 0; g < d.morphisms(); ++g)
      for (int f = 0; f < d.morphisms(); ++f) {
        if (!d.composable(g, f)) continue;
        int c = d.compose(g, f);
        if (g != assigned_mor && f != assigned_mor && c != assigned_mor) continue;
        if (mor[static_cast<std::size_t>(g)] < 0 || mor[static_cast<std::size_t>(f)] < 0 ||
            mor[static_cast<std::size_t>(c)] < 0)
          continue;
        if (e.compose(mor[static_cast<std::size_t>(g)], mor[static_cast<std::size_t>(f)]) !=
            mor[static_cast<std::size_t>(c)])
          return false;
      }
    return true;
  };

  std::function<void(int)> assign_mor = [&](int f) {
    if (f == d.morphisms()) {
      out.emplace_back(obj, mor);
      return;
    }
    if (d.is_identity(f)) {
      budget.tick();
      mor[static_cast<std::size_t>(f)] = e.identity(obj[static_cast<std::size_t>(d.src(f))]);
      if (consistent_after(f)) assign_mor(f + 1);
      mor[static_cast<std::size_t>(f)] = -1;
      return;
    }
    for (int g = 0; g < e.morphisms(); ++g) {
      if (e.src(g) != obj[static_cast<std::size_t>(d.src(f))] ||
          e.dst(g) != obj[static_cast<std::size_t>(d.dst(f))])
        continue;
      budget.tick();
      mor[static_cast<std::size_t>(f)] = g;
      if (consistent_after(f)) assign_mor(f + 1);
      mor[static_cast<std::size_t>(f)] = -1;
    }
  };

  std::function<void(int)> assign_obj = [&](int a) {
    if (a == d.objects()) {
      assign_mor(0);
      return;
    }
    for (int b = 0; b < e.objects(); ++b) {
      budget.tick();
      obj[static_cast<std::size_t>(a)] = b;
      assign_obj(a + 1);
      obj[static_cast<std::size_t>(a)] = -1;
    }
  };

  assign_obj(0);
  return out;
}

// all natural transformations between functors given by raw tables
std::vector<std::vector<int>> enumerate_nat_trans(const FinCat& d, const FinCat& e,
                                                  const std::vector<int>& f_obj,
                                                  const std::vector<int>& f_mor,
                                                  const std::vector<int>& g_obj,
                                                  const std::vector<int>& g_mor,
                                                  bool iso_only, Budgeter& budget) {
  std::vector<std::vector<int>> out;
  std::vector<int> comp(static_cast<std::size_t>(d.objects()), -1);

  auto natural_after = [&](int obj) {
    for (int f = 0; f < d.morphisms(); ++f) {
      int a = d.src(f), b = d.dst(f);
      if (a != obj && b != obj) continue;
      if (comp[static_cast<std::size_t>(a)] < 0 || comp[static_cast<std::size_t>(b)] < 0) continue;
      if (e.compose(g_mor[static_cast<std::size_t>(f)], comp[static_cast<std::size_t>(a)]) !=
          e.compose(comp[static_cast<std::size_t>(b)], f_mor[static_cast<std::size_t>(f)]))
        return false;
    }
    return true;
  };

  std::function<void(int)> assign = [&](int a) {
    if (a == d.objects()) {
      out.push_back(comp);
      return;
    }
    for (int c = 0; c < e.morphisms(); ++c) {
      if (e.src(c) != f_obj[static_cast<std::size_t>(a)] ||
          e.dst(c) != g_obj[static_cast<std::size_t>(a)])
        continue;
      if (iso_only && !e.is_iso(c)) continue;
      budget.tick();
      comp[static_cast<std::size_t>(a)] = c;
      if (natural_after(a)) assign(a + 1);
      comp[static_cast<std::size_t>(a)] = -1;
    }
  };
  assign(0);
  return out;
}

}  // namespace

std::vector<FinFunctor> all_functors(const FinCat& a, const FinCat& b, long max_steps) {
  Budgeter budget(max_steps);
  std::vector<FinFunctor> out;
  for (const auto& [obj, mor] : enumerate_functors(a, b, budget))
    out.emplace_back(a, b, obj, mor);
  return out;
}

std::vector<std::pair<FinFunctor, FinFunctor>> parallel_pair_catalog(int count) {
  std::vector<std::pair<FinCat, FinCat>> shapes;
  shapes.emplace_back(arrow_category(), arrow_category());
  shapes.emplace_back(discrete_category(2), arrow_category());
  shapes.emplace_back(walking_isomorphism(), walking_isomorphism());
  shapes.emplace_back(group_z2(), group_z2());
  shapes.emplace_back(arrow_category(), walking_isomorphism());
  shapes.emplace_back(cyclic_group_category(3), cyclic_group_category(3));
  shapes.emplace_back(walking_isomorphism(), group_z2());
  shapes.emplace_back(discrete_category(3), walking_isomorphism());

  std::vector<std::pair<FinFunctor, FinFunctor>> out;
  for (const auto& [c0, c1] : shapes) {
    std::vector<FinFunctor> fs = all_functors(c0, c1);
    for (const FinFunctor& f : fs)
      for (const FinFunctor& g : fs) {
        out.emplace_back(f, g);
        if (static_cast<int>(out.size()) >= count) return out;
      }
  }
  return out;
}

UniversalPropertyReport verify_candidate_equalizer(const FinFunctor& d0,
                                                   const FinFunctor& d1,
                                                   const EqualizerCat& candidate,
                                                   const FinCat& test,
                                                   const EnumerationBudget& budget) {
  if (d0.source() != d1.source() || d0.target() != d1.target())
    throw ShapeError("parallel pair endpoints mismatch");
  if (test.objects() > budget.max_objects || test.morphisms() > budget.max_morphisms)
    throw BudgetExceeded("test category exceeds enumeration budget");
  const FinCat& c0 = d0.source();
  const FinCat& c1 = d0.target();
  const FinCat& eq = candidate.eq;
  const FinFunctor& proj = candidate.projection;

  Budgeter steps(budget.max_steps);
  UniversalPropertyReport rep;
  std::string detail;

  auto functors_a = enumerate_functors(test, eq, steps);
  rep.functors_into_equalizer = static_cast<int>(functors_a.size());

  // side B: pairs (F0, beta)
  std::set<std::vector<int>> pair_set;
  auto functors_b = enumerate_functors(test, c0, steps);
  for (const auto& [obj0, mor0] : functors_b) {
    // tables of d1 o F0 and d0 o F0
    std::vector<int> f_obj(static_cast<std::size_t>(test.objects())), f_mor(static_cast<std::size_t>(test.morphisms()));
    std::vector<int> g_obj(static_cast<std::size_t>(test.objects())), g_mor(static_cast<std::size_t>(test.morphisms()));
    for (int a = 0; a < test.objects(); ++a) {
      f_obj[static_cast<std::size_t>(a)] = d1.obj(obj0[static_cast<std::size_t>(a)]);
      g_obj[static_cast<std::size_t>(a)] = d0.obj(obj0[static_cast<std::size_t>(a)]);
    }
    for (int f = 0; f < test.morphisms(); ++f) {
      f_mor[static_cast<std::size_t>(f)] = d1.mor(mor0[static_cast<std::size_t>(f)]);
      g_mor[static_cast<std::size_t>(f)] = d0.mor(mor0[static_cast<std::size_t>(f)]);
    }
    for (const auto& beta :
         enumerate_nat_trans(test, c1, f_obj, f_mor, g_obj, g_mor, true, steps)) {
      std::vector<int> key = obj0;
      key.insert(key.end(), mor0.begin(), mor0.end());
      key.insert(key.end(), beta.begin(), beta.end());
      pair_set.insert(std::move(key));
    }
  }
  rep.functor_pairs = static_cast<int>(pair_set.size());

  // image of side A under h |-> (proj o h, alpha . h)
  std::set<std::vector<int>> image;
  bool image_ok = true;
  for (const auto& [hobj, hmor] : functors_a) {
    std::vector<int> key;
    for (int a = 0; a < test.objects(); ++a) key.push_back(proj.obj(hobj[static_cast<std::size_t>(a)]));
    for (int f = 0; f < test.morphisms(); ++f) key.push_back(proj.mor(hmor[static_cast<std::size_t>(f)]));
    for (int a = 0; a < test.objects(); ++a)
      key.push_back(candidate.structure.component(hobj[static_cast<std::size_t>(a)]));
    if (!pair_set.count(key)) {
      image_ok = false;
      if (detail.size() < 400) detail += "projected functor escapes the pair set\n";
    }
    image.insert(std::move(key));
  }
  rep.functor_bijection = image_ok &&
                          static_cast<int>(image.size()) == rep.functors_into_equalizer &&
                          rep.functors_into_equalizer == rep.functor_pairs;
  if (!rep.functor_bijection && detail.size() < 400)
    detail += "functor counts: " + std::to_string(rep.functors_into_equalizer) + " vs " +
              std::to_string(rep.functor_pairs) + "\n";

  // natural transformation bijection over every ordered functor pair
  bool nat_ok = true;
  for (const auto& [hobj, hmor] : functors_a)
    for (const auto& [kobj, kmor] : functors_a) {
      auto gammas = enumerate_nat_trans(test, eq, hobj, hmor, kobj, kmor, false, steps);
      rep.nat_trans_direct += static_cast<long>(gammas.size());

      // whiskered tables proj o h, proj o k
      std::vector<int> ph_obj(static_cast<std::size_t>(test.objects())), ph_mor(static_cast<std::size_t>(test.morphisms()));
      std::vector<int> pk_obj(static_cast<std::size_t>(test.objects())), pk_mor(static_cast<std::size_t>(test.morphisms()));
      for (int a = 0; a < test.objects(); ++a) {
        ph_obj[static_cast<std::size_t>(a)] = proj.obj(hobj[static_cast<std::size_t>(a)]);
        pk_obj[static_cast<std::size_t>(a)] = proj.obj(kobj[static_cast<std::size_t>(a)]);
      }
      for (int f = 0; f < test.morphisms(); ++f) {
        ph_mor[static_cast<std::size_t>(f)] = proj.mor(hmor[static_cast<std::size_t>(f)]);
        pk_mor[static_cast<std::size_t>(f)] = proj.mor(kmor[static_cast<std::size_t>(f)]);
      }
      auto candidates =
          enumerate_nat_trans(test, c0, ph_obj, ph_mor, pk_obj, pk_mor, false, steps);

      // beta components of h and k through the structure transformation
      auto beta_at = [&](const std::vector<int>& fobj, int a) {
        return candidate.structure.component(fobj[static_cast<std::size_t>(a)]);
      };

      long compatible = 0;
      std::set<std::vector<int>> compatible_set;
      for (const auto& gp : candidates) {
        bool corrected = true;
        for (int a = 0; a < test.objects() && corrected; ++a) {
          int left = c1.compose(d0.mor(gp[static_cast<std::size_t>(a)]), beta_at(hobj, a));
          int right = c1.compose(beta_at(kobj, a), d1.mor(gp[static_cast<std::size_t>(a)]));
          corrected = left == right;
        }
        // literally-labelled variant: evaluated only where it typechecks
        bool literal_defined = true, literal = true;
        for (int a = 0; a < test.objects() && literal_defined; ++a) {
          int g0 = d0.mor(gp[static_cast<std::size_t>(a)]);
          int g1 = d1.mor(gp[static_cast<std::size_t>(a)]);
          int bh = beta_at(hobj, a), bk = beta_at(kobj, a);
          if (c1.src(g0) != c1.src(bh) || c1.dst(g0) != c1.src(bk) ||
              c1.src(g1) != c1.dst(bh) || c1.dst(g1) != c1.dst(bk)) {
            literal_defined = false;
            break;
          }
          literal = literal && c1.compose(bk, g0) == c1.compose(g1, bh);
        }
        if (literal_defined && literal != corrected) ++rep.label_order_mismatches;
        if (corrected) {
          ++compatible;
          compatible_set.insert(gp);
        }
      }
      rep.nat_trans_pairs += compatible;

      std::set<std::vector<int>> image_gamma;
      for (const auto& g : gammas) {
        std::vector<int> whiskered(static_cast<std::size_t>(test.objects()));
        for (int a = 0; a < test.objects(); ++a)
          whiskered[static_cast<std::size_t>(a)] = proj.mor(g[static_cast<std::size_t>(a)]);
        if (!compatible_set.count(whiskered)) {
          nat_ok = false;
          if (detail.size() < 400) detail += "whiskered transformation not compatible\n";
        }
        image_gamma.insert(std::move(whiskered));
      }
      if (static_cast<long>(image_gamma.size()) != static_cast<long>(gammas.size()) ||
          static_cast<long>(gammas.size()) != compatible) {
        nat_ok = false;
        if (detail.size() < 400)
          detail += "transformation counts " + std::to_string(gammas.size()) + " vs " +
                    std::to_string(compatible) + "\n";
      }
    }
  rep.nat_trans_bijection = nat_ok;
  rep.passed = rep.functor_bijection && rep.nat_trans_bijection;
  rep.detail = std::move(detail);
  return rep;
}

UniversalPropertyReport verify_universal_property(const FinFunctor& d0,
                                                  const FinFunctor& d1,
                                                  const FinCat& test,
                                                  const EnumerationBudget& budget) {
  return verify_candidate_equalizer(d0, d1, build_equalizer_cat(d0, d1), test, budget);
}

}  // namespace patchcat
