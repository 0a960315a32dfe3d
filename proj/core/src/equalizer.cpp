#include "patchcat/equalizer.hpp"

#include "patchcat/errors.hpp"

namespace patchcat {

bool EqContext::operator==(const EqContext& o) const {
  return lanes == o.lanes && r1 == o.r1 && lane0 == o.lane0 && lane1 == o.lane1 &&
         h0 == o.h0 && h1 == o.h1;
}

EqContext make_eq_context(std::vector<RingDesc> lanes, RingDesc r1, int lane0,
                          int lane1, RingHom h0, RingHom h1) {
  if (lanes.empty()) throw ShapeError("context needs at least one lane");
  if (lane0 < 0 || lane0 >= static_cast<int>(lanes.size()) || lane1 < 0 ||
      lane1 >= static_cast<int>(lanes.size()))
    throw ShapeError("lane index out of range");
  if (h0.source() != lanes[static_cast<std::size_t>(lane0)] || h0.target() != r1 ||
      h1.source() != lanes[static_cast<std::size_t>(lane1)] || h1.target() != r1)
    throw RingMismatch("lane homomorphism endpoints do not match the context");
  return EqContext{std::move(lanes), r1, lane0, lane1, std::move(h0), std::move(h1)};
}

EqContext identity_context(const RingDesc& r) {
  return make_eq_context({r}, r, 0, 0, RingHom::inclusion(r, r), RingHom::inclusion(r, r));
}

// ---------------------------------------------------------------------------
// Matrix equations modulo relations.
// ---------------------------------------------------------------------------

namespace {

Mat vec_row_major(const Mat& m) {
  Mat v(m.ring(), m.rows() * m.cols(), 1);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v.at(i * m.cols() + j, 0) = m.at(i, j);
  return v;
}

Mat unvec_row_major(const Mat& v, const RingDesc& r, int rows, int cols) {
  Mat m(r, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = v.at(i * cols + j, 0);
  return m;
}

struct SandwichSolution {
  Mat x;
  bool unique;
};

// Solves p * X * q = r with columns taken modulo im(rel_eq); uniqueness is
// measured modulo im(rel_x), i.e. as maps into the module presented by
// rel_x.
std::optional<SandwichSolution> solve_sandwich(const Mat& p, const Mat& q, const Mat& r,
                                               const Mat& rel_eq, const Mat& rel_x) {
  const RingDesc& ring = p.ring();
  int xr = p.cols(), xc = q.rows();
  Mat coeff = Mat::kronecker(p, q.transposed());
  Mat slack = Mat::kronecker(rel_eq, Mat::identity(ring, r.cols()));
  Mat big = Mat::hcat(coeff, slack);
  auto sol = solve_exact(big, vec_row_major(r));
  if (!sol) return std::nullopt;
  Mat x = unvec_row_major(sol->submatrix(0, 0, xr * xc, 1), ring, xr, xc);

  bool unique = true;
  Mat null = kernel_basis(big);
  for (int c = 0; c < null.cols() && unique; ++c) {
    Mat xi = unvec_row_major(null.submatrix(0, c, xr * xc, 1), ring, xr, xc);
    unique = solve_exact(rel_x, xi).has_value();
  }
  return SandwichSolution{std::move(x), unique};
}

}  // namespace

std::optional<ModuleMap> invert_module_map(const ModuleMap& f) {
  const PresentedModule& s = f.source();
  const PresentedModule& t = f.target();
  auto right = solve_sandwich(f.matrix(), Mat::identity(s.ring, t.generators()),
                              Mat::identity(s.ring, t.generators()), t.rel, s.rel);
  if (!right) return std::nullopt;
  ModuleMap g = [&]() -> ModuleMap {
    try {
      return ModuleMap(t, s, right->x);
    } catch (const ShapeError&) {
      throw NonInvertible("candidate inverse is not a module map");
    }
  }();
  if (!maps_equal(compose(g, f), ModuleMap::identity(s))) return std::nullopt;
  if (!maps_equal(compose(f, g), ModuleMap::identity(t))) return std::nullopt;
  return g;
}

// ---------------------------------------------------------------------------
// Objects and morphisms.
// ---------------------------------------------------------------------------

PresentedModule EqObject::d0_carrier() const {
  return base_change(ctx_.h0, part(ctx_.lane0));
}
PresentedModule EqObject::d1_carrier() const {
  return base_change(ctx_.h1, part(ctx_.lane1));
}

void EqObject::validate() const {
  if (static_cast<int>(carrier_.size()) != ctx_.lane_count())
    throw ShapeError("carrier lane count mismatch");
  for (int i = 0; i < ctx_.lane_count(); ++i)
    if (carrier_[static_cast<std::size_t>(i)].ring != ctx_.lanes[static_cast<std::size_t>(i)])
      throw RingMismatch("carrier lane ring mismatch");
  PresentedModule d0 = d0_carrier();
  PresentedModule d1 = d1_carrier();
  if (glue_.source() != d1 || glue_.target() != d0)
    throw ShapeError("glue endpoints do not match the pulled-back carriers");
  if (glue_inv_.source() != d0 || glue_inv_.target() != d1)
    throw ShapeError("glue inverse endpoints invalid");
  if (!maps_equal(compose(glue_, glue_inv_), ModuleMap::identity(d0)) ||
      !maps_equal(compose(glue_inv_, glue_), ModuleMap::identity(d1)))
    throw NonInvertible("glue witnesses are not mutually inverse");
}

EqObject::EqObject(EqContext ctx, std::vector<PresentedModule> carrier, ModuleMap glue,
                   ModuleMap glue_inv)
    : ctx_(std::move(ctx)), carrier_(std::move(carrier)), glue_(std::move(glue)),
      glue_inv_(std::move(glue_inv)) {
  validate();
}

EqObject::EqObject(EqContext ctx, std::vector<PresentedModule> carrier, ModuleMap glue)
    : ctx_(std::move(ctx)), carrier_(std::move(carrier)), glue_(glue),
      glue_inv_([&]() {
        auto inv = invert_module_map(glue);
        if (!inv) throw NonInvertible("glue is not an isomorphism");
        return *inv;
      }()) {
  validate();
}

namespace {

bool objects_equal(const EqObject& a, const EqObject& b) {
  return a.ctx() == b.ctx() && a.carrier() == b.carrier() &&
         a.glue().matrix() == b.glue().matrix();
}

}  // namespace

EqMorphism::EqMorphism(EqObject source, EqObject target, std::vector<ModuleMap> parts)
    : source_(std::move(source)), target_(std::move(target)), parts_(std::move(parts)) {
  if (source_.ctx() != target_.ctx()) throw ContextMismatch("morphism across contexts");
  const EqContext& c = source_.ctx();
  if (static_cast<int>(parts_.size()) != c.lane_count())
    throw ShapeError("morphism lane count mismatch");
  for (int i = 0; i < c.lane_count(); ++i) {
    const ModuleMap& f = parts_[static_cast<std::size_t>(i)];
    if (f.source() != source_.part(i) || f.target() != target_.part(i))
      throw ShapeError("lane map endpoints mismatch");
  }
  ModuleMap d0f = base_change(c.h0, parts_[static_cast<std::size_t>(c.lane0)]);
  ModuleMap d1f = base_change(c.h1, parts_[static_cast<std::size_t>(c.lane1)]);
  if (!maps_equal(compose(target_.glue(), d1f), compose(d0f, source_.glue())))
    throw ShapeError("lane maps do not commute with the gluing isomorphisms");
}

EqMorphism EqMorphism::identity(const EqObject& x) {
  std::vector<ModuleMap> parts;
  for (int i = 0; i < x.ctx().lane_count(); ++i)
    parts.push_back(ModuleMap::identity(x.part(i)));
  return EqMorphism(x, x, std::move(parts));
}

EqMorphism EqMorphism::zero(const EqObject& source, const EqObject& target) {
  std::vector<ModuleMap> parts;
  for (int i = 0; i < source.ctx().lane_count(); ++i)
    parts.push_back(ModuleMap::zero(source.part(i), target.part(i)));
  return EqMorphism(source, target, std::move(parts));
}

EqMorphism compose(const EqMorphism& f, const EqMorphism& g) {
  if (!objects_equal(g.target(), f.source()))
    throw ShapeError("equalizer morphisms not composable");
  std::vector<ModuleMap> parts;
  for (std::size_t i = 0; i < f.parts().size(); ++i)
    parts.push_back(compose(f.parts()[i], g.parts()[i]));
  return EqMorphism(g.source(), f.target(), std::move(parts));
}

EqMorphism map_sum(const EqMorphism& f, const EqMorphism& g) {
  std::vector<ModuleMap> parts;
  for (std::size_t i = 0; i < f.parts().size(); ++i)
    parts.push_back(map_sum(f.parts()[i], g.parts()[i]));
  return EqMorphism(f.source(), f.target(), std::move(parts));
}

EqMorphism map_difference(const EqMorphism& f, const EqMorphism& g) {
  std::vector<ModuleMap> parts;
  for (std::size_t i = 0; i < f.parts().size(); ++i)
    parts.push_back(map_difference(f.parts()[i], g.parts()[i]));
  return EqMorphism(f.source(), f.target(), std::move(parts));
}

bool maps_equal(const EqMorphism& f, const EqMorphism& g) {
  if (!objects_equal(f.source(), g.source()) || !objects_equal(f.target(), g.target()))
    return false;
  for (std::size_t i = 0; i < f.parts().size(); ++i)
    if (!maps_equal(f.parts()[i], g.parts()[i])) return false;
  return true;
}

bool is_zero_map(const EqMorphism& f) {
  for (const ModuleMap& p : f.parts())
    if (!is_zero_map(p)) return false;
  return true;
}

bool is_isomorphism(const EqMorphism& f) {
  for (const ModuleMap& p : f.parts())
    if (!invert_module_map(p)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Kernels and cokernels.
// ---------------------------------------------------------------------------

namespace {

ModuleMap checked_map(PresentedModule s, PresentedModule t, Mat a, const char* what) {
  try {
    return ModuleMap(std::move(s), std::move(t), std::move(a));
  } catch (const ShapeError&) {
    throw InternalCheckFailure(std::string("induced gluing map invalid: ") + what);
  }
}

}  // namespace

EqObjectWithMap eq_kernel(const EqMorphism& f) {
  const EqContext& c = f.source().ctx();
  std::vector<ModuleWithMap> lanewise;
  std::vector<PresentedModule> carrier;
  for (int i = 0; i < c.lane_count(); ++i) {
    lanewise.push_back(kernel(f.parts()[static_cast<std::size_t>(i)]));
    carrier.push_back(lanewise.back().module);
  }
  const ModuleWithMap& k0 = lanewise[static_cast<std::size_t>(c.lane0)];
  const ModuleWithMap& k1 = lanewise[static_cast<std::size_t>(c.lane1)];
  ModuleMap d0_incl = base_change(c.h0, k0.map);
  ModuleMap d1_incl = base_change(c.h1, k1.map);
  const ModuleMap& phi = f.source().glue();
  const ModuleMap& phi_inv = f.source().glue_inv();

  // unique psi with d0(incl) psi = phi d1(incl), modulo the target relations
  auto psi = solve_sandwich(d0_incl.matrix(),
                            Mat::identity(c.r1, d1_incl.source().generators()),
                            phi.matrix() * d1_incl.matrix(), d0_incl.target().rel,
                            d0_incl.source().rel);
  if (!psi || !psi->unique)
    throw InternalCheckFailure("kernel gluing map missing or not unique");
  auto psi_inv = solve_sandwich(d1_incl.matrix(),
                                Mat::identity(c.r1, d0_incl.source().generators()),
                                phi_inv.matrix() * d0_incl.matrix(),
                                d1_incl.target().rel, d1_incl.source().rel);
  if (!psi_inv || !psi_inv->unique)
    throw InternalCheckFailure("kernel gluing inverse missing or not unique");

  ModuleMap glue = checked_map(d1_incl.source(), d0_incl.source(), psi->x, "kernel");
  ModuleMap glue_inv =
      checked_map(d0_incl.source(), d1_incl.source(), psi_inv->x, "kernel inverse");
  EqObject k(c, std::move(carrier), std::move(glue), std::move(glue_inv));
  std::vector<ModuleMap> incl_parts;
  for (auto& lw : lanewise) incl_parts.push_back(lw.map);
  EqMorphism incl(k, f.source(), std::move(incl_parts));
  return {std::move(k), std::move(incl)};
}

EqObjectWithMap eq_cokernel(const EqMorphism& f) {
  const EqContext& c = f.source().ctx();
  std::vector<ModuleWithMap> lanewise;
  std::vector<PresentedModule> carrier;
  for (int i = 0; i < c.lane_count(); ++i) {
    lanewise.push_back(cokernel(f.parts()[static_cast<std::size_t>(i)]));
    carrier.push_back(lanewise.back().module);
  }
  const ModuleWithMap& c0 = lanewise[static_cast<std::size_t>(c.lane0)];
  const ModuleWithMap& c1 = lanewise[static_cast<std::size_t>(c.lane1)];
  ModuleMap d0_proj = base_change(c.h0, c0.map);
  ModuleMap d1_proj = base_change(c.h1, c1.map);
  const ModuleMap& phi = f.target().glue();
  const ModuleMap& phi_inv = f.target().glue_inv();

  // unique psi with psi d1(proj) = d0(proj) phi, modulo the cokernel relations
  auto psi = solve_sandwich(Mat::identity(c.r1, d0_proj.target().generators()),
                            d1_proj.matrix(), d0_proj.matrix() * phi.matrix(),
                            d0_proj.target().rel, d0_proj.target().rel);
  if (!psi || !psi->unique)
    throw InternalCheckFailure("cokernel gluing map missing or not unique");
  auto psi_inv = solve_sandwich(Mat::identity(c.r1, d1_proj.target().generators()),
                                d0_proj.matrix(), d1_proj.matrix() * phi_inv.matrix(),
                                d1_proj.target().rel, d1_proj.target().rel);
  if (!psi_inv || !psi_inv->unique)
    throw InternalCheckFailure("cokernel gluing inverse missing or not unique");

  ModuleMap glue = checked_map(d1_proj.target(), d0_proj.target(), psi->x, "cokernel");
  ModuleMap glue_inv =
      checked_map(d0_proj.target(), d1_proj.target(), psi_inv->x, "cokernel inverse");
  EqObject q(c, std::move(carrier), std::move(glue), std::move(glue_inv));
  std::vector<ModuleMap> proj_parts;
  for (auto& lw : lanewise) proj_parts.push_back(lw.map);
  EqMorphism proj(f.target(), q, std::move(proj_parts));
  return {std::move(q), std::move(proj)};
}

// ---------------------------------------------------------------------------
// Monoidal structure.
// ---------------------------------------------------------------------------

EqObject eq_tensor(const EqObject& x, const EqObject& y) {
  if (x.ctx() != y.ctx()) throw ContextMismatch("tensor across contexts");
  const EqContext& c = x.ctx();
  std::vector<PresentedModule> carrier;
  for (int i = 0; i < c.lane_count(); ++i) carrier.push_back(tensor(x.part(i), y.part(i)));
  // base change is strict, so d_i(x (x) y) and d_i(x) (x) d_i(y) coincide
  ModuleMap glue = tensor_map(x.glue(), y.glue());
  ModuleMap glue_inv = tensor_map(x.glue_inv(), y.glue_inv());
  return EqObject(c, std::move(carrier), std::move(glue), std::move(glue_inv));
}

EqObject eq_unit(const EqContext& ctx) {
  std::vector<PresentedModule> carrier;
  for (int i = 0; i < ctx.lane_count(); ++i)
    carrier.push_back(unit_module(ctx.lanes[static_cast<std::size_t>(i)]));
  PresentedModule one_r1 = unit_module(ctx.r1);
  ModuleMap id = ModuleMap::identity(one_r1);
  return EqObject(ctx, std::move(carrier), id, id);
}

EqMorphism eq_tensor_map(const EqMorphism& f, const EqMorphism& g) {
  EqObject s = eq_tensor(f.source(), g.source());
  EqObject t = eq_tensor(f.target(), g.target());
  std::vector<ModuleMap> parts;
  for (std::size_t i = 0; i < f.parts().size(); ++i)
    parts.push_back(tensor_map(f.parts()[i], g.parts()[i]));
  return EqMorphism(std::move(s), std::move(t), std::move(parts));
}

EqMorphism eq_associator(const EqObject& x, const EqObject& y, const EqObject& z) {
  EqObject s = eq_tensor(eq_tensor(x, y), z);
  EqObject t = eq_tensor(x, eq_tensor(y, z));
  std::vector<ModuleMap> parts;
  for (int i = 0; i < x.ctx().lane_count(); ++i)
    parts.push_back(associator(x.part(i), y.part(i), z.part(i)));
  return EqMorphism(std::move(s), std::move(t), std::move(parts));
}

EqMorphism eq_braiding(const EqObject& x, const EqObject& y) {
  EqObject s = eq_tensor(x, y);
  EqObject t = eq_tensor(y, x);
  std::vector<ModuleMap> parts;
  for (int i = 0; i < x.ctx().lane_count(); ++i)
    parts.push_back(braiding(x.part(i), y.part(i)));
  return EqMorphism(std::move(s), std::move(t), std::move(parts));
}

EqMorphism eq_left_unit(const EqObject& x) {
  EqObject s = eq_tensor(eq_unit(x.ctx()), x);
  std::vector<ModuleMap> parts;
  for (int i = 0; i < x.ctx().lane_count(); ++i) parts.push_back(left_unit(x.part(i)));
  return EqMorphism(std::move(s), x, std::move(parts));
}

EqMorphism eq_right_unit(const EqObject& x) {
  EqObject s = eq_tensor(x, eq_unit(x.ctx()));
  std::vector<ModuleMap> parts;
  for (int i = 0; i < x.ctx().lane_count(); ++i) parts.push_back(right_unit(x.part(i)));
  return EqMorphism(std::move(s), x, std::move(parts));
}

EqDirectSum eq_direct_sum(const EqObject& x, const EqObject& y) {
  if (x.ctx() != y.ctx()) throw ContextMismatch("direct sum across contexts");
  const EqContext& c = x.ctx();
  std::vector<DirectSum> lanewise;
  std::vector<PresentedModule> carrier;
  for (int i = 0; i < c.lane_count(); ++i) {
    lanewise.push_back(direct_sum(x.part(i), y.part(i)));
    carrier.push_back(lanewise.back().module);
  }
  auto block_diag = [&](const Mat& a, const Mat& b) {
    Mat top = Mat::hcat(a, Mat(c.r1, a.rows(), b.cols()));
    Mat bot = Mat::hcat(Mat(c.r1, b.rows(), a.cols()), b);
    return Mat::vcat(top, bot);
  };
  PresentedModule d0s = base_change(c.h0, carrier[static_cast<std::size_t>(c.lane0)]);
  PresentedModule d1s = base_change(c.h1, carrier[static_cast<std::size_t>(c.lane1)]);
  ModuleMap glue(d1s, d0s, block_diag(x.glue().matrix(), y.glue().matrix()));
  ModuleMap glue_inv(d0s, d1s, block_diag(x.glue_inv().matrix(), y.glue_inv().matrix()));
  EqObject s(c, std::move(carrier), std::move(glue), std::move(glue_inv));
  std::vector<ModuleMap> i0, i1, p0, p1;
  for (auto& lw : lanewise) {
    i0.push_back(lw.inj0);
    i1.push_back(lw.inj1);
    p0.push_back(lw.proj0);
    p1.push_back(lw.proj1);
  }
  return {s, EqMorphism(x, s, std::move(i0)), EqMorphism(y, s, std::move(i1)),
          EqMorphism(s, x, std::move(p0)), EqMorphism(s, y, std::move(p1))};
}

// ---------------------------------------------------------------------------
// Coherence.
// ---------------------------------------------------------------------------

MonoidalOps MonoidalOps::canonical() {
  MonoidalOps ops;
  ops.tensor = [](const EqObject& a, const EqObject& b) { return eq_tensor(a, b); };
  ops.assoc = [](const EqObject& a, const EqObject& b, const EqObject& c) {
    return eq_associator(a, b, c);
  };
  ops.braid = [](const EqObject& a, const EqObject& b) { return eq_braiding(a, b); };
  ops.left_unit = [](const EqObject& a) { return eq_left_unit(a); };
  ops.right_unit = [](const EqObject& a) { return eq_right_unit(a); };
  return ops;
}

CoherenceReport check_coherence(const EqObject& x, const EqObject& y, const EqObject& z,
                                const MonoidalOps& ops) {
  CoherenceReport rep;
  std::string detail;

  auto run = [&](const char* name, bool& flag, auto&& body) {
    try {
      auto [lhs, rhs] = body();
      flag = maps_equal(lhs, rhs);
      if (!flag) {
        detail += std::string(name) + " fails";
        for (std::size_t i = 0; i < lhs.parts().size(); ++i)
          detail += "\n lane " + std::to_string(i) + ": " +
                    lhs.parts()[i].matrix().to_string() + " vs " +
                    rhs.parts()[i].matrix().to_string();
        detail += "\n";
      }
    } catch (const std::exception& e) {
      flag = false;
      detail += std::string(name) + " cannot be formed: " + e.what() + "\n";
    }
  };

  const EqObject& w = x;  // fourth pentagon object drawn from the triple
  run("pentagon", rep.pentagon, [&]() {
    EqMorphism lhs = compose(ops.assoc(x, y, ops.tensor(z, w)),
                             ops.assoc(ops.tensor(x, y), z, w));
    EqMorphism rhs = compose(
        eq_tensor_map(EqMorphism::identity(x), ops.assoc(y, z, w)),
        compose(ops.assoc(x, ops.tensor(y, z), w),
                eq_tensor_map(ops.assoc(x, y, z), EqMorphism::identity(w))));
    return std::pair(lhs, rhs);
  });

  run("triangle", rep.triangle, [&]() {
    EqObject unit = eq_unit(x.ctx());
    EqMorphism lhs = compose(eq_tensor_map(EqMorphism::identity(x), ops.left_unit(y)),
                             ops.assoc(x, unit, y));
    EqMorphism rhs = eq_tensor_map(ops.right_unit(x), EqMorphism::identity(y));
    return std::pair(lhs, rhs);
  });

  run("hexagon", rep.hexagon, [&]() {
    EqMorphism lhs = compose(
        ops.assoc(y, z, x), compose(ops.braid(x, ops.tensor(y, z)), ops.assoc(x, y, z)));
    EqMorphism rhs = compose(
        eq_tensor_map(EqMorphism::identity(y), ops.braid(x, z)),
        compose(ops.assoc(y, x, z), eq_tensor_map(ops.braid(x, y), EqMorphism::identity(z))));
    return std::pair(lhs, rhs);
  });

  // multiplicativity of the gluing isomorphism under tensor
  try {
    EqObject xy = ops.tensor(x, y);
    ModuleMap expected = tensor_map(x.glue(), y.glue());
    rep.glue_monoidal = maps_equal(xy.glue(), expected);
    if (!rep.glue_monoidal)
      detail += "tensor glue differs from the tensor of the glues\n";
  } catch (const std::exception& e) {
    rep.glue_monoidal = false;
    detail += std::string("tensor glue cannot be formed: ") + e.what() + "\n";
  }

  rep.passed = rep.pentagon && rep.triangle && rep.hexagon && rep.glue_monoidal;
  rep.detail = std::move(detail);
  return rep;
}

// ---------------------------------------------------------------------------
// Exactness comparison.
// ---------------------------------------------------------------------------

ExactnessReport check_faithful_exactness(const EqMorphism& f, const EqMorphism& g) {
  if (!objects_equal(f.target(), g.source()))
    throw ShapeError("candidate sequence does not compose");
  ExactnessReport rep;
  std::string detail;
  rep.composite_zero = is_zero_map(compose(g, f));

  bool carriers = rep.composite_zero;
  for (std::size_t i = 0; i < f.parts().size() && carriers; ++i) {
    const ModuleMap& fi = f.parts()[i];
    const ModuleMap& gi = g.parts()[i];
    carriers = is_injective(fi) && is_exact_pair(fi, gi) && is_surjective(gi);
  }
  rep.carriers_exact = carriers;

  bool eq = rep.composite_zero;
  if (eq) {
    try {
      EqObjectWithMap k = eq_kernel(g);
      // factor f through the kernel inclusion, lanewise
      std::vector<ModuleMap> u_parts;
      for (std::size_t i = 0; i < f.parts().size(); ++i) {
        const Mat& k0 = k.map.parts()[i].matrix();
        auto lift = solve_exact(Mat::hcat(k0, g.source().part(static_cast<int>(i)).rel),
                                f.parts()[i].matrix());
        if (!lift) throw InternalCheckFailure("kernel fails to absorb the complex map");
        u_parts.push_back(ModuleMap(f.source().part(static_cast<int>(i)), k.object.part(static_cast<int>(i)),
                                    lift->submatrix(0, 0, k0.cols(), f.parts()[i].matrix().cols())));
      }
      EqMorphism u(f.source(), k.object, std::move(u_parts));
      EqObjectWithMap c = eq_cokernel(f);
      std::vector<ModuleMap> v_parts;
      for (std::size_t i = 0; i < g.parts().size(); ++i)
        v_parts.push_back(ModuleMap(c.object.part(static_cast<int>(i)),
                                    g.target().part(static_cast<int>(i)),
                                    g.parts()[i].matrix()));
      EqMorphism v(c.object, g.target(), std::move(v_parts));
      eq = is_isomorphism(u) && is_isomorphism(v);
    } catch (const std::exception& e) {
      eq = false;
      detail += std::string("equalizer-side check aborted: ") + e.what() + "\n";
    }
  }
  rep.eq_exact = eq;
  rep.sides_agree = rep.eq_exact == rep.carriers_exact;
  rep.passed = rep.composite_zero && rep.carriers_exact && rep.eq_exact &&
               rep.sides_agree;
  if (!rep.sides_agree)
    detail += "equalizer-side and carrier-side verdicts disagree\n";
  rep.detail = std::move(detail);
  return rep;
}

// ---------------------------------------------------------------------------
// Samplers.
// ---------------------------------------------------------------------------

namespace {

// nonzero non-unit divisor for torsion summands; nullopt over fields
std::optional<RingElem> random_torsion_divisor(Rng& rng, const RingDesc& r,
                                               int max_degree, int height) {
  if (r.is_field()) return std::nullopt;
  for (int tries = 0; tries < 40; ++tries) {
    RingElem d = random_elem(rng, r, max_degree, height);
    if (!d.is_zero() && !d.is_unit()) return d;
  }
  return std::nullopt;
}

PresentedModule random_carrier(Rng& rng, const RingDesc& r, int free_rank,
                               int max_torsion, int max_degree, int height) {
  PresentedModule m = free_module(r, free_rank);
  int torsion = rng.range(0, max_torsion);
  for (int i = 0; i < torsion; ++i) {
    auto d = random_torsion_divisor(rng, r, max_degree, height);
    if (!d) break;
    m = direct_sum(m, cyclic_module(*d)).module;
  }
  return m;
}

Mat block_identity_plus(Rng& rng, const RingDesc& r, int torsion, int free_rank,
                        int max_degree, int height) {
  // torsion block fixed to the identity, free block a random invertible
  Mat a = Mat::identity(r, torsion + free_rank);
  if (free_rank > 0) {
    Mat u = random_invertible(rng, r, free_rank, 2 * free_rank, max_degree, height);
    for (int i = 0; i < free_rank; ++i)
      for (int j = 0; j < free_rank; ++j) a.at(torsion + i, torsion + j) = u.at(i, j);
  }
  return a;
}

}  // namespace

EqObject random_eq_object(Rng& rng, const EqContext& ctx, int max_rank, int max_degree,
                          int height) {
  for (int attempt = 0; attempt < 60; ++attempt) {
    int n = rng.range(0, max_rank);
    int max_torsion = std::max(1, max_rank - 1);
    std::vector<PresentedModule> carrier;
    for (int i = 0; i < ctx.lane_count(); ++i) {
      int rank = (i == ctx.lane0 || i == ctx.lane1) ? n : rng.range(0, max_rank);
      carrier.push_back(random_carrier(rng, ctx.lanes[static_cast<std::size_t>(i)], rank,
                                       max_torsion, max_degree, height));
    }
    PresentedModule d0 = base_change(ctx.h0, carrier[static_cast<std::size_t>(ctx.lane0)]);
    PresentedModule d1 = base_change(ctx.h1, carrier[static_cast<std::size_t>(ctx.lane1)]);
    CanonicalForm c0 = canonical_form(d0);
    CanonicalForm c1 = canonical_form(d1);
    if (c0.free_rank != c1.free_rank || c0.torsion != c1.torsion) continue;
    Mat a = block_identity_plus(rng, ctx.r1, static_cast<int>(c0.torsion.size()),
                                c0.free_rank, max_degree, height);
    auto a_inv = mat_inverse(a);
    if (!a_inv) continue;
    ModuleMap mid(c1.canonical, c0.canonical, a);
    ModuleMap mid_inv(c0.canonical, c1.canonical, *a_inv);
    ModuleMap glue = compose(c0.from_canonical, compose(mid, c1.to_canonical));
    ModuleMap glue_inv = compose(c1.from_canonical, compose(mid_inv, c0.to_canonical));
    return EqObject(ctx, std::move(carrier), std::move(glue), std::move(glue_inv));
  }
  throw InternalCheckFailure("failed to sample an equalizer object");
}

EqExtension random_eq_extension(Rng& rng, const EqObject& x, const EqObject& y,
                                int max_degree, int height) {
  const EqContext& c = x.ctx();
  if (c != y.ctx()) throw ContextMismatch("extension across contexts");
  EqDirectSum s = eq_direct_sum(x, y);
  // perturb the block-diagonal glue by a random upper corner
  PresentedModule d0x = x.d0_carrier();
  PresentedModule d1y = y.d1_carrier();
  ModuleMap corner = random_map(rng, d1y, d0x, max_degree, height);
  int gx0 = d0x.generators(), gy0 = y.d0_carrier().generators();
  int gx1 = x.d1_carrier().generators(), gy1 = d1y.generators();
  Mat glue_mat(c.r1, gx0 + gy0, gx1 + gy1);
  Mat glue_inv_mat(c.r1, gx1 + gy1, gx0 + gy0);
  const Mat& gx = x.glue().matrix();
  const Mat& gy = y.glue().matrix();
  const Mat& gxi = x.glue_inv().matrix();
  const Mat& gyi = y.glue_inv().matrix();
  Mat e = corner.matrix();
  Mat corr = -(gxi * e * gyi);  // inverse upper corner
  for (int i = 0; i < gx0; ++i)
    for (int j = 0; j < gx1; ++j) glue_mat.at(i, j) = gx.at(i, j);
  for (int i = 0; i < gy0; ++i)
    for (int j = 0; j < gy1; ++j) glue_mat.at(gx0 + i, gx1 + j) = gy.at(i, j);
  for (int i = 0; i < gx0; ++i)
    for (int j = 0; j < gy1; ++j) glue_mat.at(i, gx1 + j) = e.at(i, j);
  for (int i = 0; i < gx1; ++i)
    for (int j = 0; j < gx0; ++j) glue_inv_mat.at(i, j) = gxi.at(i, j);
  for (int i = 0; i < gy1; ++i)
    for (int j = 0; j < gy0; ++j) glue_inv_mat.at(gx1 + i, gx0 + j) = gyi.at(i, j);
  for (int i = 0; i < gx1; ++i)
    for (int j = 0; j < gy0; ++j) glue_inv_mat.at(i, gx0 + j) = corr.at(i, j);

  PresentedModule d0s = base_change(c.h0, s.object.part(c.lane0));
  PresentedModule d1s = base_change(c.h1, s.object.part(c.lane1));
  ModuleMap glue(d1s, d0s, std::move(glue_mat));
  ModuleMap glue_inv(d0s, d1s, std::move(glue_inv_mat));
  EqObject total(c, s.object.carrier(), std::move(glue), std::move(glue_inv));
  EqMorphism incl(x, total, std::vector<ModuleMap>(s.inj0.parts()));
  EqMorphism proj(total, y, std::vector<ModuleMap>(s.proj1.parts()));
  return {std::move(total), std::move(incl), std::move(proj)};
}

}  // namespace patchcat
