#include "patchcat/torsors.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>

#include "patchcat/errors.hpp"
#include "patchcat/rng.hpp"

namespace patchcat {

namespace {

// Chart subgroups of GL_n over k[t,1/t]: matrices that are invertible over
// k[t] (exponents >= 0 on both the matrix and its inverse) resp. k[1/t].
bool zero_chart_group_member(const Mat& m) {
  if (!is_chart_zero_matrix(m)) return false;
  auto inv = mat_inverse(m);
  return inv.has_value() && is_chart_zero_matrix(*inv);
}

bool inf_chart_group_member(const Mat& m) {
  if (!is_chart_inf_matrix(m)) return false;
  auto inv = mat_inverse(m);
  return inv.has_value() && is_chart_inf_matrix(*inv);
}

Mat scale_column(Mat m, int j, const RingElem& u) {
  for (int i = 0; i < m.rows(); ++i) m.at(i, j) = m.at(i, j) * u;
  return m;
}

// Dividing one column by the determinant moves a GL sample into SL without
// leaving the ring (the determinant is a unit whenever the matrix is one).
Mat normalize_det(const Mat& m) { return scale_column(m, 0, det(m).inverse()); }

// Exhaustive nonzero constants over F_p; a small fixed set plus random
// picks over Q, where the unit group is infinite.
std::vector<Scalar> nonzero_constants(BaseField f, Rng& rng, int extra) {
  std::vector<Scalar> out;
  if (!f.is_rationals()) {
    for (std::uint64_t r = 1; r < f.p; ++r) out.push_back(Scalar::from_residue(f, r));
    return out;
  }
  for (long v : {1L, -1L, 2L, -2L, 3L}) out.push_back(Scalar::from_rational(mpq_class(v)));
  out.push_back(Scalar::from_rational(mpq_class(1, 2)));
  for (int i = 0; i < extra; ++i) out.push_back(random_nonzero_scalar(rng, f));
  return out;
}

// k[t]_(t)-membership of a canonical fraction in k(t) is a valuation
// condition: nonnegative valuation forces the denominator away from t.
bool local_lane_member(const Mat& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero() && m.at(i, j).t_valuation() < 0) return false;
  return true;
}

struct BlDescent {
  GluedModule descended;
  bool trivial = false;
  // (h0, h1) over the local resp. Laurent lane with g = h0 * h1^{-1}.
  std::optional<std::pair<Mat, Mat>> witness;
};

// Runs the datum (free lane carriers, glue g) through module descent and,
// when the glued k[t]-module is free, extracts the trivializing pair from
// the descent isomorphism: g * d1(h) = d0(h) rearranges to g = h0 * h1^{-1}.
BlDescent bl_descend(const PatchingContext& pc, const GroupDesc& g, const Mat& cocycle) {
  int n = cocycle.rows();
  RingDesc loc = pc.eq.lanes[0];
  RingDesc lau = pc.eq.lanes[1];
  std::vector<PresentedModule> carrier{free_module(loc, n), free_module(lau, n)};
  ModuleMap glue_map(base_change(pc.eq.h1, carrier[1]), base_change(pc.eq.h0, carrier[0]),
                     cocycle);
  EqObject obj(pc.eq, carrier, glue_map);
  BlDescent out{glue(pc, obj), false, std::nullopt};
  auto psi = is_isomorphic(free_module(pc.r, n), out.descended.module);
  out.trivial = psi.has_value();
  if (!psi) return out;
  EqMorphism frame = compose(out.descended.iso, restrict_map(pc, *psi));
  Mat h0 = frame.part(0).matrix();
  Mat h1 = frame.part(1).matrix();
  if (g.kind == GroupDesc::Kind::sl) {
    // det(h0) and det(h1) agree in k(t) because det(g) = 1, so the scaled
    // pair keeps the same ratio.
    h0 = normalize_det(h0);
    h1 = normalize_det(h1);
  }
  out.witness = {{std::move(h0), std::move(h1)}};
  return out;
}

}  // namespace

std::string GroupDesc::to_string() const {
  switch (kind) {
    case Kind::gm:
      return "gm";
    case Kind::gl:
      return "gl(" + std::to_string(n) + ")";
    case Kind::sl:
      return "sl(" + std::to_string(n) + ")";
  }
  return "";
}

GroupDesc group_gm() { return GroupDesc{GroupDesc::Kind::gm, 1}; }

GroupDesc group_gl(int n) {
  if (n < 1) throw ShapeError("gl(n) needs n >= 1");
  return GroupDesc{GroupDesc::Kind::gl, n};
}

GroupDesc group_sl(int n) {
  if (n < 1) throw ShapeError("sl(n) needs n >= 1");
  return GroupDesc{GroupDesc::Kind::sl, n};
}

bool group_member(const GroupDesc& g, const Mat& m) {
  if (m.rows() != g.rank() || m.cols() != g.rank()) return false;
  if (g.kind == GroupDesc::Kind::sl) return det(m).is_one();
  return mat_inverse(m).has_value();
}

RingDesc overlap_ring(TorsorContext ctx, BaseField f) {
  return ctx == TorsorContext::bl ? ring_rational_functions(f) : ring_laurent(f);
}

TorsorDatum make_torsor(TorsorContext ctx, const GroupDesc& g, Mat cocycle) {
  if (cocycle.ring() != overlap_ring(ctx, cocycle.ring().base_field()))
    throw RingMismatch("torsor cocycle must live over the overlap ring of its context");
  if (cocycle.rows() != g.rank() || cocycle.cols() != g.rank())
    throw ShapeError("torsor cocycle must be " + std::to_string(g.rank()) + " x " +
                     std::to_string(g.rank()) + " for " + g.to_string());
  if (!group_member(g, cocycle))
    throw NonInvertible("torsor cocycle is not a member of " + g.to_string());
  return TorsorDatum{ctx, g, std::move(cocycle)};
}

H1Class connecting_map(TorsorContext ctx, const GroupDesc& g, const Mat& cocycle) {
  TorsorDatum datum = make_torsor(ctx, g, cocycle);
  H1Class cls{std::move(datum), {}, false};
  if (ctx == TorsorContext::bl) {
    PatchingContext pc = bl_context(cocycle.ring().base_field());
    cls.trivial = bl_descend(pc, g, cocycle).trivial;
    return cls;
  }
  BirkhoffFactorization fac = birkhoff_factorize(Cocycle(cocycle));
  cls.normal_form = fac.type.exponents;
  cls.trivial = fac.type.is_trivial();
  return cls;
}

H0Report h0_equalizer(TorsorContext ctx, const GroupDesc& g, BaseField f, Rng& rng,
                      int samples, int window) {
  H0Report rep;
  rep.window = window;
  std::ostringstream detail;
  int n = g.rank();
  bool ok = true;

  if (g.kind == GroupDesc::Kind::sl && n == 1) {
    rep.equalizer_count = 1;
    rep.matches_global_image = true;
    rep.passed = true;
    rep.detail = "sl(1) is the trivial group";
    return rep;
  }

  if (ctx == TorsorContext::bl) {
    PatchingContext pc = bl_context(f);
    RingDesc lau = pc.eq.lanes[1];
    RingDesc rat = pc.eq.r1;
    if (n == 1) {
      // Laurent-lane units are c t^m; the local-lane partner exists only at
      // valuation zero, so the equalizer inside the window is the constants,
      // exactly the image of the units of k[t].
      int found = 0;
      for (const Scalar& c : nonzero_constants(f, rng, samples)) {
        for (int m = -window; m <= window; ++m) {
          RingElem v = RingElem::constant(lau, c) * RingElem::t_power(lau, m);
          RingElem over = v.into(rat);
          if (over.t_valuation() != 0) continue;
          ++found;
          ok &= m == 0;
          ok &= RingElem::constant(pc.r, c).into(rat) == over;
        }
      }
      rep.equalizer_count = f.is_rationals() ? -1 : found;
      if (!f.is_rationals()) ok &= found == static_cast<int>(f.p) - 1;
      detail << "window units agreeing on both lanes: " << found << "; ";
    } else {
      rep.equalizer_count = -1;
      RingDesc loc = pc.eq.lanes[0];
      for (int s = 0; s < samples; ++s) {
        Mat w = random_invertible(rng, pc.r, n, 2 * n, 2);
        if (g.kind == GroupDesc::Kind::sl) w = normalize_det(w);
        Mat a0 = w.into(loc);
        Mat a1 = w.into(lau);
        ok &= group_member(g, a0) && group_member(g, a1);
        ok &= a0.into(rat) == a1.into(rat);
      }
      // diag(t, t^{-1}, 1, ...) is a Laurent-lane member whose overlap value
      // has no local-lane partner, so it is correctly outside the equalizer.
      Mat neg = Mat::identity(lau, n);
      neg.at(0, 0) = RingElem::t(lau);
      if (g.kind == GroupDesc::Kind::sl)
        neg.at(1, 1) = RingElem::t_power(lau, -1);
      ok &= group_member(g, neg);
      Mat over = neg.into(rat);
      bool partner = local_lane_member(over) && det(over).t_valuation() == 0;
      ok &= !partner;
      detail << "polynomial samples: " << samples << "; ";
    }
  } else {
    RingDesc lau = ring_laurent(f);
    if (n == 1) {
      // Both chart rings have only constant units, so agreeing pairs are
      // the diagonal copy of the base-field units.
      int found = 0;
      for (const Scalar& c : nonzero_constants(f, rng, samples)) {
        for (int m = -window; m <= window; ++m) {
          Mat v(lau, 1, 1);
          v.at(0, 0) = RingElem::constant(lau, c) * RingElem::t_power(lau, m);
          if (!zero_chart_group_member(v) || !inf_chart_group_member(v)) continue;
          ++found;
          ok &= m == 0;
        }
      }
      rep.equalizer_count = f.is_rationals() ? -1 : found;
      if (!f.is_rationals()) ok &= found == static_cast<int>(f.p) - 1;
      detail << "window units in both charts: " << found << "; ";
    } else {
      rep.equalizer_count = -1;
      RingDesc ks = ring_scalars(f);
      for (int s = 0; s < samples; ++s) {
        Mat c = random_invertible(rng, ks, n, 2 * n, 0);
        if (g.kind == GroupDesc::Kind::sl) c = normalize_det(c);
        Mat cl = c.into(lau);
        ok &= zero_chart_group_member(cl) && inf_chart_group_member(cl);
      }
      // Nonconstant chart elements have no partner on the other chart.
      Mat p = Mat::identity(lau, n);
      p.at(0, 1) = RingElem::t(lau);
      ok &= zero_chart_group_member(p) && !inf_chart_group_member(p);
      Mat q = Mat::identity(lau, n);
      q.at(0, 1) = RingElem::t_power(lau, -1);
      ok &= inf_chart_group_member(q) && !zero_chart_group_member(q);
      detail << "constant samples: " << samples << "; ";
    }
  }

  rep.matches_global_image = ok;
  rep.passed = ok;
  detail << (ok ? "equalizer matches the global image" : "mismatch found");
  rep.detail = detail.str();
  return rep;
}

SixTermReport verify_six_term(TorsorContext ctx, const GroupDesc& g, BaseField f,
                              Rng& rng, int samples, int window,
                              bool mutated_connecting) {
  SixTermReport rep;
  std::ostringstream detail;
  int n = g.rank();
  int checked = 0;
  bool sl1 = g.kind == GroupDesc::Kind::sl && n == 1;

  auto classify = [&](const Mat& c) -> H1Class {
    if (!mutated_connecting) return connecting_map(ctx, g, c);
    // Broken connecting map: treats every datum as already trivialized and
    // forgets the glue entirely.
    TorsorDatum datum = make_torsor(ctx, g, c);
    std::vector<int> nf;
    if (ctx == TorsorContext::two_chart) nf.assign(static_cast<std::size_t>(n), 0);
    return H1Class{std::move(datum), std::move(nf), true};
  };

  if (ctx == TorsorContext::bl) {
    PatchingContext pc = bl_context(f);
    RingDesc loc = pc.eq.lanes[0];
    RingDesc lau = pc.eq.lanes[1];
    RingDesc rat = pc.eq.r1;

    std::vector<Mat> pool;
    if (n == 1) {
      for (const Scalar& c : nonzero_constants(f, rng, 4))
        for (int m = -window; m <= window; ++m) {
          Mat v(rat, 1, 1);
          v.at(0, 0) = RingElem::constant(rat, c) * RingElem::t_power(rat, m);
          pool.push_back(v);
        }
      for (int s = 0; s < samples; ++s) {
        Mat v(rat, 1, 1);
        v.at(0, 0) = random_unit(rng, rat, 3);
        pool.push_back(v);
      }
    } else {
      pool.push_back(Mat::identity(rat, n));
      Mat d = Mat::identity(rat, n);
      d.at(0, 0) = RingElem::t(rat);
      d.at(1, 1) = RingElem::t_power(rat, -1);
      pool.push_back(d);
      for (int s = 0; s < samples; ++s) {
        Mat w = random_invertible(rng, rat, n, 2 * n, 2);
        if (g.kind == GroupDesc::Kind::sl) w = normalize_det(w);
        pool.push_back(w);
      }
    }

    {
      // (i) distinct global sections restrict to distinct lane pairs
      bool okc = true;
      std::vector<Mat> globals;
      if (n == 1) {
        for (const Scalar& c : nonzero_constants(f, rng, 2)) {
          Mat v(pc.r, 1, 1);
          v.at(0, 0) = RingElem::constant(pc.r, c);
          globals.push_back(v);
        }
      } else {
        for (int s = 0; s < 4; ++s) {
          Mat w = random_invertible(rng, pc.r, n, 2 * n, 1);
          if (g.kind == GroupDesc::Kind::sl) w = normalize_det(w);
          globals.push_back(w);
        }
      }
      for (std::size_t i = 0; i < globals.size(); ++i)
        for (std::size_t j = i + 1; j < globals.size(); ++j) {
          if (globals[i] == globals[j]) continue;
          okc &= !(globals[i].into(loc) == globals[j].into(loc) &&
                   globals[i].into(lau) == globals[j].into(lau));
          ++checked;
        }
      rep.h0_injective = okc;
    }

    rep.h0_equalizer_exact = h0_equalizer(ctx, g, f, rng, samples, window).passed;

    {
      // (iii) kernel of the connecting map = image of the restriction ratio
      // d0(h) d1(h)^{-1}; the descent isomorphism provides the witnesses.
      bool okc = true;
      for (const Mat& c : pool) {
        bool lhs = classify(c).trivial;
        BlDescent des = bl_descend(pc, g, c);
        bool in_image = false;
        if (des.witness) {
          const Mat& h0 = des.witness->first;
          const Mat& h1 = des.witness->second;
          in_image = group_member(g, h0) && group_member(g, h1) &&
                     h0.into(rat) * mat_inverse(h1)->into(rat) == c;
        }
        okc &= lhs == in_image;
        ++checked;
      }
      for (int s = 0; s < samples; ++s) {
        Mat h0 = random_invertible(rng, loc, n, 2 * n, 2);
        Mat h1 = random_invertible(rng, lau, n, 2 * n, 2);
        if (g.kind == GroupDesc::Kind::sl) {
          h0 = normalize_det(h0);
          h1 = normalize_det(h1);
        }
        Mat c = h0.into(rat) * mat_inverse(h1)->into(rat);
        okc &= classify(c).trivial;
        ++checked;
      }
      rep.h0_overlap_exact = okc;
    }

    {
      // (iv) the class map is constant on equivalence orbits
      bool okc = true;
      int probes = std::min<int>(samples, static_cast<int>(pool.size()));
      for (int s = 0; s < probes; ++s) {
        const Mat& c = pool[static_cast<std::size_t>(s)];
        Mat a = random_invertible(rng, loc, n, n + 2, 2);
        Mat b = random_invertible(rng, lau, n, n + 2, 2);
        if (g.kind == GroupDesc::Kind::sl) {
          a = normalize_det(a);
          b = normalize_det(b);
        }
        Mat c2 = a.into(rat) * c * mat_inverse(b)->into(rat);
        okc &= classify(c2).trivial == classify(c).trivial;
        ++checked;
      }
      rep.h1_restriction_exact = okc;
    }

    {
      // (v) every class lifts: descent produces a global module whose lane
      // restrictions are the free lane classes
      bool okc = true;
      int probes = std::min<int>(std::max(4, samples / 4), static_cast<int>(pool.size()));
      for (int s = 0; s < probes; ++s) {
        const Mat& c = pool[static_cast<std::size_t>(s)];
        BlDescent des = bl_descend(pc, g, c);
        okc &= is_isomorphism(des.descended.iso);
        EqObject res = restrict_module(pc, des.descended.module);
        okc &= is_isomorphic(res.carrier()[0], free_module(loc, n)).has_value();
        okc &= is_isomorphic(res.carrier()[1], free_module(lau, n)).has_value();
        ++checked;
      }
      rep.h1_lane_exact = okc;
    }

    if (g.is_abelian()) {
      bool okc = true;
      int probes = std::min<int>(samples, static_cast<int>(pool.size()) - 1);
      for (int s = 0; s + 1 < probes + 1; ++s) {
        const Mat& c1 = pool[static_cast<std::size_t>(s)];
        const Mat& c2 = pool[static_cast<std::size_t>(s) + 1];
        Mat prod = c1 * c2;
        okc &= classify(prod).trivial ==
               (classify(c1).trivial && classify(c2).trivial);
        ++checked;
      }
      rep.abelian_homomorphisms = okc;
    } else {
      rep.abelian_homomorphisms = true;
      detail << "homomorphism clause skipped (nonabelian); ";
    }
  } else {
    RingDesc lau = ring_laurent(f);
    RingDesc pt = ring_poly(f);
    RingDesc ks = ring_scalars(f);

    std::vector<Mat> pool;
    pool.push_back(Mat::identity(lau, n));
    if (!sl1) {
      Mat d = Mat::identity(lau, n);
      d.at(0, 0) = RingElem::t(lau);
      if (n >= 2) d.at(1, 1) = RingElem::t_power(lau, -1);
      if (!(g.kind == GroupDesc::Kind::sl && n == 1)) pool.push_back(d);
      if (n == 1) {
        for (const Scalar& c : nonzero_constants(f, rng, 4))
          for (int m = -window; m <= window; ++m) {
            Mat v(lau, 1, 1);
            v.at(0, 0) = RingElem::constant(lau, c) * RingElem::t_power(lau, m);
            pool.push_back(v);
          }
      }
      for (int s = 0; s < samples; ++s) {
        Mat w = random_cocycle(rng, lau, n, 2).matrix();
        if (g.kind == GroupDesc::Kind::sl) w = normalize_det(w);
        pool.push_back(w);
      }
    }

    // Restriction samples from the two chart subgroups, as Laurent matrices.
    auto zero_chart_sample = [&]() {
      Mat w = random_invertible(rng, pt, n, n + 2, 2);
      if (g.kind == GroupDesc::Kind::sl) w = normalize_det(w);
      return w.into(lau);
    };
    auto inf_chart_sample = [&]() {
      Mat w = random_invertible(rng, pt, n, n + 2, 2);
      if (g.kind == GroupDesc::Kind::sl) w = normalize_det(w);
      return from_s_polynomial(w, lau);
    };

    {
      // (i) constants inject into both chart groups
      bool okc = true;
      std::vector<Mat> globals;
      for (int s = 0; s < 4; ++s) {
        Mat c = random_invertible(rng, ks, n, 2 * n, 0);
        if (g.kind == GroupDesc::Kind::sl) c = normalize_det(c);
        globals.push_back(c);
      }
      for (std::size_t i = 0; i < globals.size(); ++i)
        for (std::size_t j = i + 1; j < globals.size(); ++j) {
          if (globals[i] == globals[j]) continue;
          okc &= !(globals[i].into(lau) == globals[j].into(lau));
          ++checked;
        }
      rep.h0_injective = okc;
    }

    rep.h0_equalizer_exact = h0_equalizer(ctx, g, f, rng, samples, window).passed;

    {
      // (iii) the class of g is trivial exactly when g splits through the
      // two chart subgroups. Independent right-hand side: section counts of
      // the transposed-glue bundle detect the trivial splitting type.
      bool okc = true;
      for (const Mat& c : pool) {
        bool lhs = classify(c).trivial;
        TwoChartDatum dual = make_two_chart(Cocycle(c.transposed()));
        bool rhs = global_sections(dual).dimension == n &&
                   global_sections(twist(dual, -1)).dimension == 0;
        okc &= lhs == rhs;
        if (rhs) {
          BirkhoffFactorization fac = birkhoff_factorize(Cocycle(c));
          okc &= fac.type.is_trivial();
          okc &= fac.m_minus * fac.m_plus == c;
          okc &= inf_chart_group_member(fac.m_minus) &&
                 zero_chart_group_member(fac.m_plus);
        }
        ++checked;
      }
      for (int s = 0; s < samples; ++s) {
        Mat c = inf_chart_sample() * zero_chart_sample();
        okc &= classify(c).trivial;
        ++checked;
      }
      rep.h0_overlap_exact = okc;
    }

    {
      // (iv) the normal form is constant on equivalence orbits
      bool okc = true;
      int probes = std::min<int>(samples, static_cast<int>(pool.size()));
      for (int s = 0; s < probes; ++s) {
        const Mat& c = pool[static_cast<std::size_t>(s)];
        Mat c2 = inf_chart_sample() * c * zero_chart_sample();
        okc &= classify(c2).normal_form == classify(c).normal_form;
        ++checked;
      }
      rep.h1_restriction_exact = okc;
    }

    {
      // (v) both chart groups have only the trivial class, and any pair of
      // chart frames glues: their transition ratio is a valid cocycle whose
      // class restricts back to the trivial chart classes.
      bool okc = true;
      int probes = std::max(2, samples / 4);
      for (int s = 0; s < probes; ++s) {
        Mat c = inf_chart_sample() * zero_chart_sample();
        H1Class cls = classify(c);
        okc &= cls.rep.cocycle == c;
        okc &= group_member(g, c);
        ++checked;
      }
      rep.h1_lane_exact = okc;
    }

    if (g.is_abelian() && !sl1) {
      // Connecting is a homomorphism on the abelian group: the normal-form
      // exponent is additive.
      bool okc = true;
      int probes = std::min<int>(samples, static_cast<int>(pool.size()) - 1);
      for (int s = 0; s + 1 < probes + 1; ++s) {
        const Mat& c1 = pool[static_cast<std::size_t>(s)];
        const Mat& c2 = pool[static_cast<std::size_t>(s) + 1];
        Mat prod = c1 * c2;
        int lhs = classify(prod).normal_form.at(0);
        okc &= lhs == classify(c1).normal_form.at(0) + classify(c2).normal_form.at(0);
        ++checked;
      }
      rep.abelian_homomorphisms = okc;
    } else {
      rep.abelian_homomorphisms = true;
      if (!g.is_abelian()) detail << "homomorphism clause skipped (nonabelian); ";
    }
  }

  rep.samples_checked = checked;
  rep.passed = rep.h0_injective && rep.h0_equalizer_exact && rep.h0_overlap_exact &&
               rep.h1_restriction_exact && rep.h1_lane_exact &&
               rep.abelian_homomorphisms;
  detail << "clauses "
         << (rep.h0_injective ? "i+" : "i-") << " "
         << (rep.h0_equalizer_exact ? "ii+" : "ii-") << " "
         << (rep.h0_overlap_exact ? "iii+" : "iii-") << " "
         << (rep.h1_restriction_exact ? "iv+" : "iv-") << " "
         << (rep.h1_lane_exact ? "v+" : "v-")
         << (g.is_abelian() ? (rep.abelian_homomorphisms ? " hom+" : " hom-") : "");
  rep.detail = detail.str();
  return rep;
}

}  // namespace patchcat
