#include "patchcat/patching.hpp"

#include <algorithm>

#include "patchcat/errors.hpp"

namespace patchcat {

bool PatchingContext::operator==(const PatchingContext& o) const {
  return r == o.r && eq == o.eq && d == o.d;
}

PatchingContext make_patching_context(RingDesc r, EqContext eq, std::vector<RingHom> d) {
  if (static_cast<int>(d.size()) != eq.lane_count())
    throw ShapeError("one gluing map per lane required");
  for (int i = 0; i < eq.lane_count(); ++i) {
    const RingHom& h = d[static_cast<std::size_t>(i)];
    if (h.source() != r || h.target() != eq.lanes[static_cast<std::size_t>(i)])
      throw RingMismatch("gluing map endpoints do not match the context");
  }
  RingHom left = RingHom::compose(eq.h0, d[static_cast<std::size_t>(eq.lane0)]);
  RingHom right = RingHom::compose(eq.h1, d[static_cast<std::size_t>(eq.lane1)]);
  if (!(left == right))
    throw RingMismatch("the two composites into r1 disagree");
  return PatchingContext{r, std::move(eq), std::move(d)};
}

PatchingContext bl_context(BaseField k) {
  RingDesc r = ring_poly(k);
  RingDesc loc = ring_local_at_zero(k);
  RingDesc lau = ring_laurent(k);
  RingDesc kt = ring_rational_functions(k);
  EqContext eq = make_eq_context({loc, lau}, kt, 0, 1, RingHom::inclusion(loc, kt),
                                 RingHom::inclusion(lau, kt));
  return make_patching_context(
      r, eq, {RingHom::inclusion(r, loc), RingHom::inclusion(r, lau)});
}

EqObject restrict_module(const PatchingContext& ctx, const PresentedModule& m) {
  if (m.ring != ctx.r) throw RingMismatch("module is not over the global ring");
  std::vector<PresentedModule> carrier;
  for (int i = 0; i < ctx.eq.lane_count(); ++i)
    carrier.push_back(base_change(ctx.d[static_cast<std::size_t>(i)], m));
  PresentedModule d0 = base_change(ctx.eq.h0, carrier[static_cast<std::size_t>(ctx.eq.lane0)]);
  PresentedModule d1 = base_change(ctx.eq.h1, carrier[static_cast<std::size_t>(ctx.eq.lane1)]);
  ModuleMap glue(d1, d0, Mat::identity(ctx.eq.r1, d0.generators()));
  ModuleMap glue_inv(d0, d1, Mat::identity(ctx.eq.r1, d0.generators()));
  return EqObject(ctx.eq, std::move(carrier), std::move(glue), std::move(glue_inv));
}

EqMorphism restrict_map(const PatchingContext& ctx, const ModuleMap& f) {
  EqObject s = restrict_module(ctx, f.source());
  EqObject t = restrict_module(ctx, f.target());
  std::vector<ModuleMap> parts;
  for (int i = 0; i < ctx.eq.lane_count(); ++i)
    parts.push_back(base_change(ctx.d[static_cast<std::size_t>(i)], f));
  return EqMorphism(std::move(s), std::move(t), std::move(parts));
}

// ---------------------------------------------------------------------------
// Descent for the bl_context shape.
// ---------------------------------------------------------------------------

namespace {

void require_bl_shape(const PatchingContext& ctx) {
  bool ok = ctx.r.kind == RingKind::poly && ctx.eq.lane_count() == 2 &&
            ctx.eq.lanes[0].kind == RingKind::local_at_zero &&
            ctx.eq.lanes[1].kind == RingKind::laurent &&
            ctx.eq.r1.kind == RingKind::rational_functions && ctx.eq.lane0 == 0 &&
            ctx.eq.lane1 == 1 && ctx.eq.h0.is_inclusion() && ctx.eq.h1.is_inclusion() &&
            ctx.d[0].is_inclusion() && ctx.d[1].is_inclusion();
  if (!ok) throw UnsupportedRing("descent is implemented for the bl_context shape only");
}

Mat column_from(const RingDesc& r, const std::vector<RingElem>& v) {
  Mat m(r, static_cast<int>(v.size()), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m.at(static_cast<int>(i), 0) = v[i];
  return m;
}

Poly strip_t_valuation(const Poly& p) {
  Poly tv = Poly::t_power(p.field(), p.t_valuation());
  return p.divmod(tv).first;
}

}  // namespace

GluedModule glue(const PatchingContext& ctx, const EqObject& x) {
  require_bl_shape(ctx);
  if (x.ctx() != ctx.eq) throw ContextMismatch("object lives over a different context");
  const RingDesc& r_poly = ctx.r;
  const RingDesc& loc = ctx.eq.lanes[0];
  const RingDesc& lau = ctx.eq.lanes[1];
  const RingDesc& kt = ctx.eq.r1;

  CanonicalForm cl = canonical_form(x.part(0));
  CanonicalForm cu = canonical_form(x.part(1));
  int s = static_cast<int>(cl.torsion.size());
  int u = static_cast<int>(cu.torsion.size());
  int rk = cl.free_rank;
  if (cu.free_rank != rk)
    throw InternalCheckFailure("lane ranks disagree despite invertible glue");

  // glue in canonical coordinates; its free-free block is invertible over k(t)
  ModuleMap psi = compose(base_change(ctx.eq.h0, cl.to_canonical),
                          compose(x.glue(), base_change(ctx.eq.h1, cu.from_canonical)));
  Mat phi(kt, rk, rk);
  for (int i = 0; i < rk; ++i)
    for (int j = 0; j < rk; ++j) phi.at(i, j) = psi.matrix().at(s + i, u + j);

  // phi = phi0 / g with phi0 over k[t]; diagonalize phi0 = U^-1 D V^-1
  Poly g = Poly::one(r_poly.base_field());
  for (int i = 0; i < rk; ++i)
    for (int j = 0; j < rk; ++j) {
      const Poly& den = phi.at(i, j).den();
      Poly common = poly_gcd(g, den);
      g = (g * den).divmod(common).first;
    }
  Mat phi0(r_poly, rk, rk);
  for (int i = 0; i < rk; ++i)
    for (int j = 0; j < rk; ++j) {
      const RingElem& e = phi.at(i, j);
      Poly num = e.num() * g.divmod(e.den()).first;
      phi0.at(i, j) = RingElem::from_fraction(r_poly, num, Poly::one(g.field()));
    }
  SnfResult snf = smith_normal_form(phi0);
  auto ui = mat_inverse(snf.u);
  auto vi = mat_inverse(snf.v);
  if (!ui || !vi) throw InternalCheckFailure("diagonalization witnesses not invertible");
  int ord_g = static_cast<int>(g.t_valuation());
  Poly g_tilde = strip_t_valuation(g);
  std::vector<int> a(static_cast<std::size_t>(rk));
  std::vector<Poly> f_tilde;
  for (int i = 0; i < rk; ++i) {
    RingElem fi = snf.d.at(i, i);
    if (fi.is_zero()) throw InternalCheckFailure("glue degenerates over k(t)");
    a[static_cast<std::size_t>(i)] = fi.t_valuation() - ord_g;
    f_tilde.push_back(strip_t_valuation(fi.num()));
  }

  // glued presentation: loc torsion, then lau torsion, then free generators
  int total = s + u + rk;
  Mat rel(r_poly, total, s + u);
  for (int j = 0; j < s; ++j) {
    const RingElem& d = cl.torsion[static_cast<std::size_t>(j)];
    int e = d.t_valuation();
    if (!(d == RingElem::t_power(loc, e)))
      throw InternalCheckFailure("local torsion divisor is not a power of t");
    rel.at(j, j) = RingElem::t_power(r_poly, e);
  }
  for (int j = 0; j < u; ++j) {
    const RingElem& d = cu.torsion[static_cast<std::size_t>(j)];
    if (d.den().degree() != 0)
      throw InternalCheckFailure("laurent torsion divisor is not polynomial");
    rel.at(s + j, s + j) = d.into(r_poly);
  }
  PresentedModule glued(r_poly, std::move(rel));

  // lane components of every generator, in the original carrier coordinates
  Mat chi_loc(loc, x.part(0).generators(), total);
  Mat chi_lau(lau, x.part(1).generators(), total);
  const Mat& from_l = cl.from_canonical.matrix();
  const Mat& from_u = cu.from_canonical.matrix();
  for (int j = 0; j < s; ++j)
    for (int i = 0; i < from_l.rows(); ++i) chi_loc.at(i, j) = from_l.at(i, j);
  for (int j = 0; j < u; ++j)
    for (int i = 0; i < from_u.rows(); ++i) chi_lau.at(i, s + j) = from_u.at(i, j);
  for (int i = 0; i < rk; ++i) {
    // local coords (f_i~ / g~) U^-1 e_i, laurent coords t^-a_i V e_i
    RingElem scale = RingElem::from_fraction(loc, f_tilde[static_cast<std::size_t>(i)], g_tilde);
    std::vector<RingElem> can_l(static_cast<std::size_t>(s + rk), RingElem::zero(loc));
    for (int k = 0; k < rk; ++k)
      can_l[static_cast<std::size_t>(s + k)] = ui->at(k, i).into(loc) * scale;
    Mat col_l = from_l * column_from(loc, can_l);
    RingElem tshift = RingElem::t_power(lau, -a[static_cast<std::size_t>(i)]);
    std::vector<RingElem> can_u(static_cast<std::size_t>(u + rk), RingElem::zero(lau));
    for (int k = 0; k < rk; ++k)
      can_u[static_cast<std::size_t>(u + k)] = snf.v.at(k, i).into(lau) * tshift;
    Mat col_u = from_u * column_from(lau, can_u);
    for (int k = 0; k < col_l.rows(); ++k) chi_loc.at(k, s + u + i) = col_l.at(k, 0);
    for (int k = 0; k < col_u.rows(); ++k) chi_lau.at(k, s + u + i) = col_u.at(k, 0);
  }

  EqObject rest = restrict_module(ctx, glued);
  EqMorphism iso(rest, x,
                 {ModuleMap(rest.part(0), x.part(0), std::move(chi_loc)),
                  ModuleMap(rest.part(1), x.part(1), std::move(chi_lau))});
  if (!is_isomorphism(iso))
    throw InternalCheckFailure("descent witness is not an isomorphism");
  return {std::move(glued), std::move(iso)};
}

// ---------------------------------------------------------------------------
// Full faithfulness.
// ---------------------------------------------------------------------------

namespace {

// canonical polynomial representative of a local element modulo t^a
RingElem loc_rep_mod_tpow(const RingElem& x, int a, const RingDesc& r_poly) {
  Poly mod = Poly::t_power(x.num().field(), static_cast<std::size_t>(a));
  PolyExtGcd e = poly_ext_gcd(x.den(), mod);
  if (e.g.degree() != 0)
    throw InternalCheckFailure("local denominator not invertible modulo t^a");
  Poly rep = (x.num() * e.s).divmod(mod).second;
  return RingElem::from_fraction(r_poly, rep, Poly::one(rep.field()));
}

// canonical polynomial representative of a laurent element modulo q, q(0) != 0
RingElem lau_rep_mod(const RingElem& x, const Poly& q, const RingDesc& r_poly) {
  PolyExtGcd e = poly_ext_gcd(x.den(), q);
  if (e.g.degree() != 0)
    throw InternalCheckFailure("laurent denominator not invertible modulo q");
  Poly rep = (x.num() * e.s).divmod(q).second;
  return RingElem::from_fraction(r_poly, rep, Poly::one(rep.field()));
}

}  // namespace

FullFaithfulnessReport check_full_faithfulness(const PatchingContext& ctx,
                                               const PresentedModule& m,
                                               const PresentedModule& n) {
  require_bl_shape(ctx);
  FullFaithfulnessReport rep;
  std::string detail;
  try {
    const RingDesc& r_poly = ctx.r;
    EqObject rm = restrict_module(ctx, m);
    EqObject rn = restrict_module(ctx, n);
    HomDescription hl = hom_module(rm.part(0), rn.part(0));
    HomDescription hu = hom_module(rm.part(1), rn.part(1));
    HomDescription hr = hom_module(m, n);

    // compare the two lanewise hom modules inside Hom over k(t)
    std::vector<ModuleMap> hl_pulled, hu_pulled;
    for (const ModuleMap& b : hl.basis) hl_pulled.push_back(base_change(ctx.eq.h0, b));
    for (const ModuleMap& b : hu.basis) hu_pulled.push_back(base_change(ctx.eq.h1, b));
    int gl = static_cast<int>(hl.basis.size());
    int gu = static_cast<int>(hu.basis.size());
    Mat bl(ctx.eq.r1, gl, gu), bu(ctx.eq.r1, gu, gl);
    for (int j = 0; j < gu; ++j) {
      auto c = express_in_hom_basis(hu_pulled[static_cast<std::size_t>(j)], hl_pulled);
      if (!c) throw InternalCheckFailure("pulled hom basis fails to span");
      for (int i = 0; i < gl; ++i) bl.at(i, j) = (*c)[static_cast<std::size_t>(i)];
    }
    for (int j = 0; j < gl; ++j) {
      auto c = express_in_hom_basis(hl_pulled[static_cast<std::size_t>(j)], hu_pulled);
      if (!c) throw InternalCheckFailure("pulled hom basis fails to span");
      for (int i = 0; i < gu; ++i) bu.at(i, j) = (*c)[static_cast<std::size_t>(i)];
    }
    ModuleMap glue_h(base_change(ctx.eq.h1, hu.module), base_change(ctx.eq.h0, hl.module),
                     std::move(bl));
    ModuleMap glue_h_inv(base_change(ctx.eq.h0, hl.module),
                         base_change(ctx.eq.h1, hu.module), std::move(bu));
    EqObject hom_obj(ctx.eq, {hl.module, hu.module}, std::move(glue_h),
                     std::move(glue_h_inv));
    GluedModule gh = glue(ctx, hom_obj);
    rep.invariants_match = is_isomorphic(gh.module, hr.module).has_value();
    if (!rep.invariants_match) detail += "glued hom module differs from Hom over k[t]\n";

    // natural map in the glued coordinates
    auto inv_loc = invert_module_map(gh.iso.part(0));
    auto inv_lau = invert_module_map(gh.iso.part(1));
    if (!inv_loc || !inv_lau)
      throw InternalCheckFailure("descent witness lost invertibility");
    int gens = gh.module.generators();
    int tors = gh.module.rel.cols();
    Mat nu(r_poly, gens, static_cast<int>(hr.basis.size()));
    for (std::size_t j = 0; j < hr.basis.size(); ++j) {
      ModuleMap floc = base_change(ctx.d[0], hr.basis[j]);
      ModuleMap flau = base_change(ctx.d[1], hr.basis[j]);
      auto v_loc = express_in_hom_basis(floc, hl.basis);
      auto v_lau = express_in_hom_basis(flau, hu.basis);
      if (!v_loc || !v_lau)
        throw InternalCheckFailure("restricted hom escapes the lane hom module");
      Mat c_loc = inv_loc->matrix() * column_from(ctx.eq.lanes[0], *v_loc);
      Mat c_lau = inv_lau->matrix() * column_from(ctx.eq.lanes[1], *v_lau);
      for (int k = 0; k < gens; ++k) {
        if (k < tors) {
          const RingElem& d = gh.module.rel.at(k, k);
          int v = d.t_valuation();
          if (d == RingElem::t_power(r_poly, v))
            nu.at(k, static_cast<int>(j)) = loc_rep_mod_tpow(c_loc.at(k, 0), v, r_poly);
          else
            nu.at(k, static_cast<int>(j)) = lau_rep_mod(c_lau.at(k, 0), d.num(), r_poly);
        } else {
          RingElem free_l = c_loc.at(k, 0);
          if (!(free_l == c_lau.at(k, 0).into(ctx.eq.r1).into(ctx.eq.lanes[0])))
            throw InternalCheckFailure("free coordinates disagree across lanes");
          nu.at(k, static_cast<int>(j)) = free_l.into(r_poly);
        }
      }
    }
    ModuleMap natural(hr.module, gh.module, std::move(nu));
    rep.natural_map_defined = true;
    rep.injective = is_injective(natural);
    rep.surjective = is_surjective(natural);
    if (!rep.injective) detail += "natural map has kernel\n";
    if (!rep.surjective) detail += "natural map misses glued elements\n";
  } catch (const std::exception& e) {
    detail += std::string("hom comparison aborted: ") + e.what() + "\n";
  }
  rep.passed = rep.natural_map_defined && rep.invariants_match && rep.injective &&
               rep.surjective;
  rep.detail = std::move(detail);
  return rep;
}

// ---------------------------------------------------------------------------
// Essential image closures and flatness.
// ---------------------------------------------------------------------------

ClosureReport check_essential_image_closures(const PatchingContext& ctx, Rng& rng,
                                             int samples, int max_rank, int max_degree) {
  require_bl_shape(ctx);
  ClosureReport rep;
  rep.samples = samples;
  bool tensor_ok = true, kernel_ok = true, cokernel_ok = true, extension_ok = true;
  std::string detail;
  for (int i = 0; i < samples; ++i) {
    try {
      PresentedModule m = random_module(rng, ctx.r, max_rank, max_degree);
      PresentedModule n = random_module(rng, ctx.r, max_rank, max_degree);
      EqObject x = restrict_module(ctx, m);
      EqObject y = restrict_module(ctx, n);

      GluedModule gt = glue(ctx, eq_tensor(x, y));
      if (!is_isomorphic(gt.module, tensor(m, n))) {
        tensor_ok = false;
        detail += "tensor preimage mismatch at sample " + std::to_string(i) + "\n";
      }

      ModuleMap f = random_map(rng, m, n, max_degree);
      EqMorphism rf = restrict_map(ctx, f);
      GluedModule gk = glue(ctx, eq_kernel(rf).object);
      if (!is_isomorphic(gk.module, kernel(f).module)) {
        kernel_ok = false;
        detail += "kernel preimage mismatch at sample " + std::to_string(i) + "\n";
      }
      GluedModule gc = glue(ctx, eq_cokernel(rf).object);
      if (!is_isomorphic(gc.module, cokernel(f).module)) {
        cokernel_ok = false;
        detail += "cokernel preimage mismatch at sample " + std::to_string(i) + "\n";
      }

      EqExtension ext = random_eq_extension(rng, x, y, max_degree);
      glue(ctx, ext.total);  // throws when no preimage witness exists
    } catch (const std::exception& e) {
      extension_ok = false;
      detail += std::string("closure sample aborted: ") + e.what() + "\n";
    }
  }
  rep.tensor_closed = tensor_ok;
  rep.kernel_closed = kernel_ok;
  rep.cokernel_closed = cokernel_ok;
  rep.extension_closed = extension_ok;
  rep.passed = tensor_ok && kernel_ok && cokernel_ok && extension_ok;
  rep.detail = std::move(detail);
  return rep;
}

FlatnessReport check_faithful_flatness(
    const PatchingContext& ctx,
    const std::vector<std::pair<ModuleMap, ModuleMap>>& sequences) {
  FlatnessReport rep;
  rep.samples = static_cast<int>(sequences.size());
  std::string detail;
  auto short_exact = [](const ModuleMap& f, const ModuleMap& g) {
    return is_zero_map(compose(g, f)) && is_injective(f) && is_exact_pair(f, g) &&
           is_surjective(g);
  };
  int idx = 0;
  for (const auto& [f, g] : sequences) {
    bool over_r = short_exact(f, g);
    bool lanes = true;
    for (const RingHom& h : ctx.d)
      lanes = lanes && short_exact(base_change(h, f), base_change(h, g));
    if (over_r != lanes) {
      ++rep.disagreements;
      detail += "sample " + std::to_string(idx) + ": over base " +
                (over_r ? "exact" : "not exact") + ", lanes " +
                (lanes ? "exact" : "not exact") + "\n";
    }
    ++idx;
  }
  rep.passed = rep.disagreements == 0;
  rep.detail = std::move(detail);
  return rep;
}

}  // namespace patchcat
