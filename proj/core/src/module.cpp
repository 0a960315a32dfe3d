#include "patchcat/module.hpp"

#include <algorithm>

#include "patchcat/errors.hpp"

namespace patchcat {

PresentedModule::PresentedModule(RingDesc r, Mat relations)
    : ring(r), rel(std::move(relations)) {
  if (rel.ring() != ring) throw RingMismatch("presentation matrix ring mismatch");
}

PresentedModule free_module(const RingDesc& r, int rank) {
  return PresentedModule(r, Mat(r, rank, 0));
}

PresentedModule zero_module(const RingDesc& r) { return free_module(r, 0); }

PresentedModule cyclic_module(const RingElem& a) {
  Mat rel(a.ring(), 1, 1);
  rel.at(0, 0) = a;
  return PresentedModule(a.ring(), rel);
}

ModuleMap::ModuleMap(PresentedModule source, PresentedModule target, Mat a)
    : source_(std::move(source)), target_(std::move(target)), a_(std::move(a)),
      w_(a_.ring(), 0, 0) {
  if (a_.rows() != target_.generators() || a_.cols() != source_.generators() ||
      a_.ring() != source_.ring)
    throw ShapeError("module map shape/ring mismatch");
  auto w = solve_exact(target_.rel, a_ * source_.rel);
  if (!w) throw ShapeError("matrix does not carry source relations into target relations");
  w_ = std::move(*w);
}

ModuleMap::ModuleMap(PresentedModule source, PresentedModule target, Mat a, Mat witness)
    : source_(std::move(source)), target_(std::move(target)), a_(std::move(a)),
      w_(std::move(witness)) {
  if (a_.rows() != target_.generators() || a_.cols() != source_.generators())
    throw ShapeError("module map shape mismatch");
  if (a_ * source_.rel != target_.rel * w_)
    throw InternalCheckFailure("module map witness does not certify the map");
}

ModuleMap ModuleMap::identity(const PresentedModule& m) {
  return ModuleMap(m, m, Mat::identity(m.ring, m.generators()),
                   Mat::identity(m.ring, m.rel.cols()));
}

ModuleMap ModuleMap::zero(const PresentedModule& source, const PresentedModule& target) {
  return ModuleMap(source, target, Mat(source.ring, target.generators(), source.generators()),
                   Mat(source.ring, target.rel.cols(), source.rel.cols()));
}

ModuleMap compose(const ModuleMap& f, const ModuleMap& g) {
  if (g.target() != f.source()) throw ShapeError("composition target/source mismatch");
  return ModuleMap(g.source(), f.target(), f.matrix() * g.matrix(),
                   f.witness() * g.witness());
}

ModuleMap map_sum(const ModuleMap& f, const ModuleMap& g) {
  if (f.source() != g.source() || f.target() != g.target())
    throw ShapeError("map sum shape mismatch");
  return ModuleMap(f.source(), f.target(), f.matrix() + g.matrix(),
                   f.witness() + g.witness());
}

ModuleMap map_difference(const ModuleMap& f, const ModuleMap& g) {
  if (f.source() != g.source() || f.target() != g.target())
    throw ShapeError("map difference shape mismatch");
  return ModuleMap(f.source(), f.target(), f.matrix() - g.matrix(),
                   f.witness() - g.witness());
}

bool maps_equal(const ModuleMap& f, const ModuleMap& g) {
  if (f.source() != g.source() || f.target() != g.target()) return false;
  Mat d = f.matrix() - g.matrix();
  if (d.is_zero()) return true;
  return solve_exact(f.target().rel, d).has_value();
}

bool is_zero_map(const ModuleMap& f) {
  if (f.matrix().is_zero()) return true;
  return solve_exact(f.target().rel, f.matrix()).has_value();
}

ModuleWithMap kernel(const ModuleMap& f) {
  const PresentedModule& s = f.source();
  const PresentedModule& t = f.target();
  // x represents a kernel element iff A x lands in the target relations
  Mat z = kernel_basis(Mat::hcat(f.matrix(), t.rel));
  Mat k0 = z.submatrix(0, 0, s.generators(), z.cols());
  // relations: combinations of the k0 columns that die in the source quotient
  Mat z2 = kernel_basis(Mat::hcat(k0, s.rel));
  Mat rel_k = z2.submatrix(0, 0, k0.cols(), z2.cols());
  Mat w = -z2.submatrix(k0.cols(), 0, s.rel.cols(), z2.cols());
  PresentedModule k(s.ring, rel_k);
  return {k, ModuleMap(k, s, k0, w)};
}

ModuleWithMap cokernel(const ModuleMap& f) {
  const PresentedModule& t = f.target();
  PresentedModule c(t.ring, Mat::hcat(t.rel, f.matrix()));
  Mat w = Mat::vcat(Mat::identity(t.ring, t.rel.cols()),
                    Mat(t.ring, f.matrix().cols(), t.rel.cols()));
  return {c, ModuleMap(t, c, Mat::identity(t.ring, t.generators()), w)};
}

bool is_zero_module(const PresentedModule& m) {
  auto [torsion, free_rank] = invariant_factors(m);
  return torsion.empty() && free_rank == 0;
}

bool is_injective(const ModuleMap& f) { return is_zero_module(kernel(f).module); }

bool is_surjective(const ModuleMap& f) { return is_zero_module(cokernel(f).module); }

bool is_exact_pair(const ModuleMap& f, const ModuleMap& g) {
  if (f.target() != g.source()) throw ShapeError("complex does not compose");
  if (!is_zero_map(compose(g, f))) return false;
  ModuleWithMap k = kernel(g);
  // factor f through the kernel inclusion and test surjectivity
  const Mat& k0 = k.map.matrix();
  auto lift = solve_exact(Mat::hcat(k0, g.source().rel), f.matrix());
  if (!lift) throw InternalCheckFailure("kernel inclusion failed to absorb a complex map");
  Mat h = lift->submatrix(0, 0, k0.cols(), f.matrix().cols());
  return is_surjective(ModuleMap(f.source(), k.module, h));
}

DirectSum direct_sum(const PresentedModule& a, const PresentedModule& b) {
  const RingDesc& r = a.ring;
  if (r != b.ring) throw RingMismatch("direct sum ring mismatch");
  Mat top = Mat::hcat(a.rel, Mat(r, a.generators(), b.rel.cols()));
  Mat bot = Mat::hcat(Mat(r, b.generators(), a.rel.cols()), b.rel);
  PresentedModule s(r, Mat::vcat(top, bot));
  int ga = a.generators(), gb = b.generators();
  Mat i0(r, ga + gb, ga), i1(r, ga + gb, gb), p0(r, ga, ga + gb), p1(r, gb, ga + gb);
  for (int i = 0; i < ga; ++i) {
    i0.at(i, i) = RingElem::one(r);
    p0.at(i, i) = RingElem::one(r);
  }
  for (int i = 0; i < gb; ++i) {
    i1.at(ga + i, i) = RingElem::one(r);
    p1.at(i, ga + i) = RingElem::one(r);
  }
  return {s, ModuleMap(a, s, i0), ModuleMap(b, s, i1), ModuleMap(s, a, p0),
          ModuleMap(s, b, p1)};
}

PresentedModule tensor(const PresentedModule& m, const PresentedModule& n) {
  if (m.ring != n.ring) throw RingMismatch("tensor ring mismatch");
  const RingDesc& r = m.ring;
  Mat left = Mat::kronecker(m.rel, Mat::identity(r, n.generators()));
  Mat right = Mat::kronecker(Mat::identity(r, m.generators()), n.rel);
  return PresentedModule(r, Mat::hcat(left, right));
}

ModuleMap tensor_map(const ModuleMap& f, const ModuleMap& g) {
  PresentedModule s = tensor(f.source(), g.source());
  PresentedModule t = tensor(f.target(), g.target());
  return ModuleMap(std::move(s), std::move(t),
                   Mat::kronecker(f.matrix(), g.matrix()));
}

PresentedModule unit_module(const RingDesc& r) { return free_module(r, 1); }

ModuleMap associator(const PresentedModule& a, const PresentedModule& b,
                     const PresentedModule& c) {
  PresentedModule s = tensor(tensor(a, b), c);
  PresentedModule t = tensor(a, tensor(b, c));
  // both flattenings index generators by i*(g_b*g_c) + j*g_c + k
  return ModuleMap(std::move(s), std::move(t),
                   Mat::identity(a.ring, a.generators() * b.generators() * c.generators()));
}

ModuleMap braiding(const PresentedModule& a, const PresentedModule& b) {
  PresentedModule s = tensor(a, b);
  PresentedModule t = tensor(b, a);
  Mat p(a.ring, t.generators(), s.generators());
  int ga = a.generators(), gb = b.generators();
  for (int i = 0; i < ga; ++i)
    for (int j = 0; j < gb; ++j)
      p.at(j * ga + i, i * gb + j) = RingElem::one(a.ring);
  return ModuleMap(std::move(s), std::move(t), std::move(p));
}

ModuleMap left_unit(const PresentedModule& m) {
  PresentedModule s = tensor(unit_module(m.ring), m);
  return ModuleMap(std::move(s), m, Mat::identity(m.ring, m.generators()));
}

ModuleMap right_unit(const PresentedModule& m) {
  PresentedModule s = tensor(m, unit_module(m.ring));
  return ModuleMap(std::move(s), m, Mat::identity(m.ring, m.generators()));
}

CanonicalForm canonical_form(const PresentedModule& m) {
  const RingDesc& r = m.ring;
  SnfResult s = smith_normal_form(m.rel);
  int g = m.generators();
  int n = std::min(g, m.rel.cols());
  std::vector<int> torsion_rows, free_rows;
  std::vector<RingElem> torsion;
  for (int i = 0; i < g; ++i) {
    RingElem d = i < n ? s.d.at(i, i) : RingElem::zero(r);
    if (d.is_unit()) continue;
    if (d.is_zero()) {
      free_rows.push_back(i);
    } else {
      torsion_rows.push_back(i);
      torsion.push_back(d);
    }
  }
  std::vector<int> rows = torsion_rows;
  rows.insert(rows.end(), free_rows.begin(), free_rows.end());
  int k = static_cast<int>(torsion.size());
  int total = k + static_cast<int>(free_rows.size());

  Mat canon_rel(r, total, k);
  for (int i = 0; i < k; ++i) canon_rel.at(i, i) = torsion[static_cast<std::size_t>(i)];
  PresentedModule canon(r, canon_rel);

  Mat to(r, total, g);
  for (int i = 0; i < total; ++i)
    for (int j = 0; j < g; ++j) to.at(i, j) = s.u.at(rows[static_cast<std::size_t>(i)], j);
  auto uinv = mat_inverse(s.u);
  if (!uinv) throw InternalCheckFailure("Smith transform not invertible");
  Mat from(r, g, total);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < total; ++j)
      from.at(i, j) = uinv->at(i, rows[static_cast<std::size_t>(j)]);

  CanonicalForm cf{std::move(torsion), static_cast<int>(free_rows.size()), canon,
                   ModuleMap(m, canon, std::move(to)),
                   ModuleMap(canon, m, std::move(from))};
  return cf;
}

std::pair<std::vector<RingElem>, int> invariant_factors(const PresentedModule& m) {
  SnfResult s = smith_normal_form(m.rel);
  int n = std::min(m.generators(), m.rel.cols());
  std::vector<RingElem> torsion;
  int free_rank = m.generators();
  for (int i = 0; i < n; ++i) {
    const RingElem& d = s.d.at(i, i);
    if (d.is_zero()) continue;
    --free_rank;
    if (!d.is_unit()) torsion.push_back(d);
  }
  return {torsion, free_rank};
}

std::optional<ModuleMap> is_isomorphic(const PresentedModule& m, const PresentedModule& n) {
  if (m.ring != n.ring) return std::nullopt;
  CanonicalForm cm = canonical_form(m);
  CanonicalForm cn = canonical_form(n);
  if (cm.free_rank != cn.free_rank || cm.torsion.size() != cn.torsion.size())
    return std::nullopt;
  for (std::size_t i = 0; i < cm.torsion.size(); ++i)
    if (cm.torsion[i] != cn.torsion[i]) return std::nullopt;
  ModuleMap bridge(cm.canonical, cn.canonical,
                   Mat::identity(m.ring, cm.canonical.generators()));
  return compose(cn.from_canonical, compose(bridge, cm.to_canonical));
}

namespace {

// gcd of two ring elements, canonical associate (Smith form of [a b])
RingElem ring_gcd(const RingElem& a, const RingElem& b) {
  Mat m(a.ring(), 1, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  return smith_normal_form(m).d.at(0, 0);
}

struct HomSummand {
  int src;          // canonical summand index in M
  int dst;          // canonical summand index in N
  RingElem modulus;  // zero for a free summand
  RingElem value;    // image of the source generator, as multiple of dst gen
};

}  // namespace

HomDescription hom_module(const PresentedModule& m, const PresentedModule& n) {
  if (m.ring != n.ring) throw RingMismatch("hom ring mismatch");
  const RingDesc& r = m.ring;
  CanonicalForm cm = canonical_form(m);
  CanonicalForm cn = canonical_form(n);
  int km = static_cast<int>(cm.torsion.size());
  int kn = static_cast<int>(cn.torsion.size());
  int gm = km + cm.free_rank;
  int gn = kn + cn.free_rank;

  std::vector<HomSummand> summands;
  for (int i = 0; i < gm; ++i) {
    bool src_torsion = i < km;
    for (int j = 0; j < gn; ++j) {
      bool dst_torsion = j < kn;
      if (src_torsion && dst_torsion) {
        // Hom(R/(d), R/(e)) = R/(gcd) generated by 1 |-> e/gcd
        const RingElem& d = cm.torsion[static_cast<std::size_t>(i)];
        const RingElem& e = cn.torsion[static_cast<std::size_t>(j)];
        RingElem g = ring_gcd(d, e);
        if (g.is_unit()) continue;  // coprime divisors, zero summand
        summands.push_back({i, j, g, e.divide_exact(g)});
      } else if (!src_torsion && dst_torsion) {
        summands.push_back({i, j, cn.torsion[static_cast<std::size_t>(j)], RingElem::one(r)});
      } else if (!src_torsion && !dst_torsion) {
        summands.push_back({i, j, RingElem::zero(r), RingElem::one(r)});
      }
      // torsion -> free contributes nothing
    }
  }

  int total = static_cast<int>(summands.size());
  std::vector<int> torsion_cols;
  for (int k = 0; k < total; ++k)
    if (!summands[static_cast<std::size_t>(k)].modulus.is_zero()) torsion_cols.push_back(k);
  Mat rel(r, total, static_cast<int>(torsion_cols.size()));
  for (int c = 0; c < static_cast<int>(torsion_cols.size()); ++c)
    rel.at(torsion_cols[static_cast<std::size_t>(c)], c) =
        summands[static_cast<std::size_t>(torsion_cols[static_cast<std::size_t>(c)])].modulus;
  PresentedModule hom(r, rel);

  std::vector<ModuleMap> basis;
  for (const HomSummand& s : summands) {
    Mat e(r, gn, gm);
    e.at(s.dst, s.src) = s.value;
    ModuleMap canonical_map(cm.canonical, cn.canonical, std::move(e));
    basis.push_back(compose(cn.from_canonical, compose(canonical_map, cm.to_canonical)));
  }
  return {hom, std::move(basis)};
}

std::optional<std::vector<RingElem>> express_in_hom_basis(
    const ModuleMap& f, const std::vector<ModuleMap>& basis) {
  const RingDesc& r = f.source().ring;
  int gs = f.source().generators();
  int gt = f.target().generators();
  int kb = static_cast<int>(basis.size());
  int rt = f.target().rel.cols();
  // unknowns: kb combination coefficients, then gs * rt relation slack entries
  Mat sys(r, gt * gs, kb + gs * rt);
  Mat rhs(r, gt * gs, 1);
  for (int i = 0; i < gt; ++i)
    for (int j = 0; j < gs; ++j) {
      int row = i * gs + j;
      rhs.at(row, 0) = f.matrix().at(i, j);
      for (int k = 0; k < kb; ++k) sys.at(row, k) = basis[static_cast<std::size_t>(k)].matrix().at(i, j);
      for (int l = 0; l < rt; ++l)
        sys.at(row, kb + j * rt + l) = f.target().rel.at(i, l);
    }
  auto sol = solve_exact(sys, rhs);
  if (!sol) return std::nullopt;
  std::vector<RingElem> coeffs;
  for (int k = 0; k < kb; ++k) coeffs.push_back(sol->at(k, 0));
  return coeffs;
}

PresentedModule base_change(const RingHom& h, const PresentedModule& m) {
  if (h.source() != m.ring) throw RingMismatch("base change source mismatch");
  return PresentedModule(h.target(), m.rel.mapped(h));
}

ModuleMap base_change(const RingHom& h, const ModuleMap& f) {
  return ModuleMap(base_change(h, f.source()), base_change(h, f.target()),
                   f.matrix().mapped(h), f.witness().mapped(h));
}

PresentedModule random_module(Rng& rng, const RingDesc& r, int max_generators,
                              int max_degree, int height) {
  int g = rng.range(0, max_generators);
  int nrel = rng.range(0, g + 1);
  return PresentedModule(r, random_mat(rng, r, g, nrel, max_degree, height));
}

ModuleMap random_map(Rng& rng, const PresentedModule& source,
                     const PresentedModule& target, int max_degree, int height) {
  HomDescription hom = hom_module(source, target);
  ModuleMap f = ModuleMap::zero(source, target);
  for (const ModuleMap& b : hom.basis) {
    RingElem c = random_elem(rng, source.ring, max_degree, height);
    if (c.is_zero()) continue;
    ModuleMap scaled(b.source(), b.target(), b.matrix().scaled(c), b.witness().scaled(c));
    f = map_sum(f, scaled);
  }
  return f;
}

}  // namespace patchcat
