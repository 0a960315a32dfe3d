#include "patchcat/birkhoff.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include "patchcat/errors.hpp"

namespace patchcat {

namespace {

void require_laurent(const Mat& m, const char* where) {
  if (m.ring().kind != RingKind::laurent)
    throw UnsupportedRing(std::string(where) + ": Laurent matrix expected");
}

// Laurent canonical fractions have denominator t^k, so the exponent window
// of an entry is [val(num) - k, deg(num) - k].
int den_exponent(const RingElem& e) { return static_cast<int>(e.den().t_valuation()); }

int entry_max_exponent(const RingElem& e) { return e.num().degree() - den_exponent(e); }

Scalar coefficient_at(const RingElem& e, int m) {
  BaseField f = e.ring().base_field();
  if (e.is_zero()) return Scalar::zero(f);
  int idx = m + den_exponent(e);
  if (idx < 0) return Scalar::zero(f);
  return e.num().coeff(static_cast<std::size_t>(idx));
}

Mat diagonal_t_powers(const RingDesc& r, const std::vector<int>& exps) {
  Mat d(r, static_cast<int>(exps.size()), static_cast<int>(exps.size()));
  for (int i = 0; i < d.rows(); ++i) d.at(i, i) = RingElem::t_power(r, exps[i]);
  return d;
}

Scalar constant_entry(const RingElem& e) { return e.num().coeff(0); }

// Exponent blocks of a descending exponent vector; the normalization
// parabolic is the block-upper-triangular group for this partition.
std::vector<std::pair<int, int>> exponent_blocks(const std::vector<int>& a) {
  std::vector<std::pair<int, int>> blocks;
  int i = 0, n = static_cast<int>(a.size());
  while (i < n) {
    int j = i;
    while (j < n && a[j] == a[i]) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }
  return blocks;
}

}  // namespace

Cocycle::Cocycle(Mat m) : m_(std::move(m)), inv_(m_.ring(), 0, 0) {
  require_laurent(m_, "cocycle");
  if (m_.rows() != m_.cols()) throw ShapeError("cocycle must be square");
  auto inv = mat_inverse(m_);
  if (!inv) throw NonInvertible("cocycle determinant is not a unit of the Laurent ring");
  inv_ = *inv;
}

Cocycle::Cocycle(Mat m, Mat inverse) : m_(std::move(m)), inv_(std::move(inverse)) {
  require_laurent(m_, "cocycle");
  if (m_.rows() != m_.cols() || inv_.rows() != m_.rows() || inv_.cols() != m_.cols() ||
      m_.ring() != inv_.ring())
    throw ShapeError("cocycle inverse has mismatched shape");
  Mat id = Mat::identity(m_.ring(), m_.rows());
  if (m_ * inv_ != id || inv_ * m_ != id)
    throw NonInvertible("stored cocycle inverse fails the product check");
}

int SplittingType::sum() const {
  return std::accumulate(exponents.begin(), exponents.end(), 0);
}

bool SplittingType::is_trivial() const {
  return std::all_of(exponents.begin(), exponents.end(), [](int a) { return a == 0; });
}

std::string SplittingType::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (i) os << ", ";
    os << exponents[i];
  }
  os << ")";
  return os.str();
}

int laurent_min_exponent(const Mat& m, int empty_value) {
  require_laurent(m, "exponent window");
  bool seen = false;
  int best = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const RingElem& e = m.at(i, j);
      if (e.is_zero()) continue;
      int v = e.t_valuation();
      best = seen ? std::min(best, v) : v;
      seen = true;
    }
  return seen ? best : empty_value;
}

int laurent_max_exponent(const Mat& m, int empty_value) {
  require_laurent(m, "exponent window");
  bool seen = false;
  int best = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const RingElem& e = m.at(i, j);
      if (e.is_zero()) continue;
      int v = entry_max_exponent(e);
      best = seen ? std::max(best, v) : v;
      seen = true;
    }
  return seen ? best : empty_value;
}

Mat laurent_coefficient(const Mat& m, int e) {
  require_laurent(m, "coefficient extraction");
  RingDesc k = ring_scalars(m.ring().base_field());
  Mat out(k, m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      out.at(i, j) = RingElem::constant(k, coefficient_at(m.at(i, j), e));
  return out;
}

bool is_chart_zero_matrix(const Mat& m) {
  require_laurent(m, "chart membership");
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero() && m.at(i, j).t_valuation() < 0) return false;
  return true;
}

bool is_chart_inf_matrix(const Mat& m) {
  require_laurent(m, "chart membership");
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero() && entry_max_exponent(m.at(i, j)) > 0) return false;
  return true;
}

Mat to_s_polynomial(const Mat& m, const RingDesc& poly_ring) {
  require_laurent(m, "s-substitution");
  if (poly_ring.kind != RingKind::poly || poly_ring.base_field() != m.ring().base_field())
    throw RingMismatch("s-substitution targets the polynomial ring over the same field");
  BaseField f = poly_ring.base_field();
  Mat out(poly_ring, m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const RingElem& e = m.at(i, j);
      if (e.is_zero()) continue;
      if (entry_max_exponent(e) > 0)
        throw RingMismatch("entry has positive exponents, not in k[1/t]");
      int k = den_exponent(e);
      std::vector<Scalar> coeffs(static_cast<std::size_t>(k) + 1, Scalar::zero(f));
      for (int idx = 0; idx <= e.num().degree(); ++idx)
        coeffs[static_cast<std::size_t>(k - idx)] = e.num().coeff(idx);
      out.at(i, j) = RingElem::from_fraction(poly_ring, Poly(f, std::move(coeffs)),
                                             Poly::one(f));
    }
  return out;
}

Mat from_s_polynomial(const Mat& m, const RingDesc& laurent_ring) {
  if (m.ring().kind != RingKind::poly)
    throw UnsupportedRing("s-substitution source must be a polynomial matrix");
  if (laurent_ring.kind != RingKind::laurent ||
      laurent_ring.base_field() != m.ring().base_field())
    throw RingMismatch("s-substitution targets the Laurent ring over the same field");
  BaseField f = laurent_ring.base_field();
  Mat out(laurent_ring, m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const RingElem& e = m.at(i, j);
      if (e.is_zero()) continue;
      int d = e.num().degree();
      std::vector<Scalar> rev(static_cast<std::size_t>(d) + 1, Scalar::zero(f));
      for (int idx = 0; idx <= d; ++idx)
        rev[static_cast<std::size_t>(d - idx)] = e.num().coeff(idx);
      out.at(i, j) = RingElem::from_fraction(laurent_ring, Poly(f, std::move(rev)),
                                             Poly::t_power(f, static_cast<std::size_t>(d)));
    }
  return out;
}

// Column reduction over k[t]: right-multiplies by unimodular matrices until
// the leading column-coefficient matrix is nonsingular. The total column
// degree strictly decreases at each step and is bounded below by the degree
// of the (monomial) determinant, so the loop terminates.
BirkhoffFactorization birkhoff_factorize(const Cocycle& c) {
  const RingDesc& lau = c.ring();
  BaseField f = lau.base_field();
  int n = c.rank();
  if (n == 0)
    return BirkhoffFactorization{Mat(lau, 0, 0), SplittingType{{}}, Mat(lau, 0, 0)};

  RingDesc pt = ring_poly(f);
  RingDesc k = ring_scalars(f);
  int shift = std::max(0, -laurent_min_exponent(c.matrix(), 0));
  RingElem tshift = RingElem::t_power(lau, shift);

  Mat p(pt, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p.at(i, j) = (c.matrix().at(i, j) * tshift).into(pt);
  Mat racc = Mat::identity(pt, n);

  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  auto column_degrees = [&]() {
    for (int j = 0; j < n; ++j) {
      int d = -1;
      for (int i = 0; i < n; ++i)
        if (!p.at(i, j).is_zero()) d = std::max(d, p.at(i, j).num().degree());
      if (d < 0) throw InternalCheckFailure("zero column in an invertible matrix");
      deg[static_cast<std::size_t>(j)] = d;
    }
  };

  column_degrees();
  int budget = std::accumulate(deg.begin(), deg.end(), 0) + n + 2;
  bool reduced = false;
  for (int round = 0; round < budget && !reduced; ++round) {
    Mat lead(k, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        lead.at(i, j) = RingElem::constant(
            k, p.at(i, j).num().coeff(static_cast<std::size_t>(deg[static_cast<std::size_t>(j)])));
    Mat ker = kernel_basis(lead);
    if (ker.cols() == 0) {
      reduced = true;
      break;
    }

    int target = -1;
    for (int j = 0; j < n; ++j) {
      if (ker.at(j, 0).is_zero()) continue;
      if (target < 0 || deg[static_cast<std::size_t>(j)] > deg[static_cast<std::size_t>(target)])
        target = j;
    }
    if (target < 0) throw InternalCheckFailure("empty kernel column during reduction");

    Mat e = Mat::identity(pt, n);
    for (int j = 0; j < n; ++j) {
      if (ker.at(j, 0).is_zero()) continue;
      int gap = deg[static_cast<std::size_t>(target)] - deg[static_cast<std::size_t>(j)];
      e.at(j, target) = RingElem::constant(pt, constant_entry(ker.at(j, 0))) *
                        RingElem::t_power(pt, gap);
    }
    int before = deg[static_cast<std::size_t>(target)];
    p = p * e;
    racc = racc * e;
    column_degrees();
    if (deg[static_cast<std::size_t>(target)] >= before)
      throw InternalCheckFailure("column reduction failed to lower the degree");
  }
  if (!reduced) throw InternalCheckFailure("column reduction exceeded its budget");

  Mat m_minus(lau, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m_minus.at(i, j) =
          p.at(i, j).into(lau) * RingElem::t_power(lau, -deg[static_cast<std::size_t>(j)]);
  auto racc_inv = mat_inverse(racc);
  if (!racc_inv) throw InternalCheckFailure("accumulated column operations not invertible");
  Mat m_plus = racc_inv->into(lau);

  std::vector<int> exps(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) exps[static_cast<std::size_t>(j)] = deg[static_cast<std::size_t>(j)] - shift;

  // Sort exponents descending (stable) by conjugating with a permutation.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return exps[static_cast<std::size_t>(a)] > exps[static_cast<std::size_t>(b)]; });
  Mat mm(lau, n, n), mp(lau, n, n);
  std::vector<int> sorted(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    sorted[static_cast<std::size_t>(j)] = exps[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
    for (int i = 0; i < n; ++i) {
      mm.at(i, j) = m_minus.at(i, order[static_cast<std::size_t>(j)]);
      mp.at(j, i) = m_plus.at(order[static_cast<std::size_t>(j)], i);
    }
  }
  m_minus = mm;
  m_plus = mp;

  // Normalize m_minus(inf) toward the identity. The allowed right factors W
  // keep D^-1 W D and D^-1 W^-1 D polynomial, i.e. form the block-upper
  // parabolic of the exponent partition; full normalization applies exactly
  // when the inverse constant term lies in that parabolic.
  Mat cterm = laurent_coefficient(m_minus, 0);
  auto cinv = mat_inverse(cterm);
  if (!cinv) throw InternalCheckFailure("m_minus constant term must be invertible");
  auto in_parabolic = [&](const Mat& w) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (sorted[static_cast<std::size_t>(j)] < sorted[static_cast<std::size_t>(i)] &&
            !w.at(i, j).is_zero())
          return false;
    return true;
  };
  Mat w(k, 0, 0), winv(k, 0, 0);
  if (in_parabolic(*cinv)) {
    w = *cinv;
    winv = cterm;
  } else {
    w = Mat::identity(k, n);
    winv = Mat::identity(k, n);
    for (auto [b0, b1] : exponent_blocks(sorted)) {
      Mat block = cterm.submatrix(b0, b0, b1 - b0, b1 - b0);
      auto binv = mat_inverse(block);
      if (!binv) continue;
      for (int i = b0; i < b1; ++i)
        for (int j = b0; j < b1; ++j) {
          w.at(i, j) = binv->at(i - b0, j - b0);
          winv.at(i, j) = block.at(i - b0, j - b0);
        }
    }
  }
  if (!w.is_identity()) {
    if (!in_parabolic(winv))
      throw InternalCheckFailure("normalization inverse left the parabolic");
    Mat wl(lau, n, n), tw(lau, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        wl.at(i, j) = RingElem::constant(lau, constant_entry(w.at(i, j)));
        if (!winv.at(i, j).is_zero())
          tw.at(i, j) = RingElem::constant(lau, constant_entry(winv.at(i, j))) *
                        RingElem::t_power(lau, sorted[static_cast<std::size_t>(j)] -
                                                   sorted[static_cast<std::size_t>(i)]);
      }
    m_minus = m_minus * wl;
    m_plus = tw * m_plus;
  }

  BirkhoffFactorization out{m_minus, SplittingType{sorted}, m_plus};
  Mat d = diagonal_t_powers(lau, sorted);
  if (out.m_minus * d * out.m_plus != c.matrix())
    throw InternalCheckFailure("factorization identity failed");
  if (!is_chart_inf_matrix(out.m_minus) || !is_chart_zero_matrix(out.m_plus))
    throw InternalCheckFailure("factor left its chart");
  auto mmi = mat_inverse(out.m_minus);
  auto mpi = mat_inverse(out.m_plus);
  if (!mmi || !mpi || !is_chart_inf_matrix(*mmi) || !is_chart_zero_matrix(*mpi))
    throw InternalCheckFailure("factor is not invertible over its chart");
  int vdet = det(c.matrix()).t_valuation();
  if (out.type.sum() != vdet)
    throw InternalCheckFailure("exponent sum disagrees with the determinant valuation");
  return out;
}

TwoChartDatum make_two_chart(Cocycle phi) {
  RingDesc pt = ring_poly(phi.ring().base_field());
  int n = phi.rank();
  return TwoChartDatum{free_module(pt, n), free_module(pt, n), std::move(phi)};
}

TwoChartDatum twist(const TwoChartDatum& d, int n) {
  const RingDesc& lau = d.phi.ring();
  Mat m = d.phi.matrix().scaled(RingElem::t_power(lau, n));
  Mat inv = d.phi.inverse().scaled(RingElem::t_power(lau, -n));
  return TwoChartDatum{d.v0, d.v_inf, Cocycle(std::move(m), std::move(inv))};
}

GlobalSections global_sections(const TwoChartDatum& d) {
  const Mat& phi = d.phi.matrix();
  const RingDesc& lau = d.phi.ring();
  BaseField f = lau.base_field();
  int n = d.rank();
  GlobalSections out;
  if (n == 0) return out;

  // Window certificate: sections are w * N^-1 for a factorization of the
  // transposed cocycle, with w coordinatewise bounded by the bundle
  // exponents; column reduction bounds those exponents and the degrees of
  // N^-1 in terms of the entry window of phi.
  int maxd = laurent_max_exponent(phi, 0);
  int minv = laurent_min_exponent(phi, 0);
  int shift = std::max(0, -minv);
  int window = std::max((maxd - minv) + n,
                        std::max(0, maxd) + (n - 1) * std::max(0, maxd + shift));
  long unknowns = static_cast<long>(n) * (window + 1);
  if (unknowns > 20000)
    throw BoundExceeded("global sections window needs " + std::to_string(unknowns) +
                        " coefficients");

  ScalarSystem sys(f, static_cast<int>(unknowns));
  for (int r = 0; r < n; ++r)
    for (int e = minv - window; e <= -1; ++e) {
      std::vector<Scalar> row(static_cast<std::size_t>(unknowns), Scalar::zero(f));
      bool nonzero = false;
      for (int i = 0; i < n; ++i) {
        const RingElem& entry = phi.at(r, i);
        if (entry.is_zero()) continue;
        for (int j = 0; j <= window; ++j) {
          Scalar coeff = coefficient_at(entry, e + j);
          if (coeff.is_zero()) continue;
          row[static_cast<std::size_t>(i * (window + 1) + j)] = coeff;
          nonzero = true;
        }
      }
      if (nonzero) sys.add_equation(std::move(row), Scalar::zero(f));
    }

  RingDesc pt = ring_poly(f);
  for (const auto& v : sys.nullspace()) {
    Mat s_inf(lau, n, 1);
    for (int i = 0; i < n; ++i) {
      std::vector<Scalar> num(static_cast<std::size_t>(window) + 1, Scalar::zero(f));
      for (int j = 0; j <= window; ++j)
        num[static_cast<std::size_t>(window - j)] = v[static_cast<std::size_t>(i * (window + 1) + j)];
      s_inf.at(i, 0) = RingElem::from_fraction(
          lau, Poly(f, std::move(num)), Poly::t_power(f, static_cast<std::size_t>(window)));
    }
    Mat s0 = (phi * s_inf).into(pt);
    out.basis.push_back(Section{std::move(s0), std::move(s_inf)});
  }
  out.dimension = static_cast<int>(out.basis.size());
  return out;
}

SplittingType bundle_type(const Cocycle& phi) {
  return birkhoff_factorize(phi.transposed()).type;
}

namespace {

// Chart matrices of the evaluation map (sections of d) tensor O -> d,
// together with per-chart surjectivity.
struct EvaluationData {
  GlobalSections sections;
  Mat s0;
  Mat s_inf;  // over the s-polynomial ring
  bool surjective = false;
};

EvaluationData evaluation_data(const TwoChartDatum& d) {
  BaseField f = d.phi.ring().base_field();
  RingDesc pt = ring_poly(f);
  GlobalSections secs = global_sections(d);
  int n = d.rank();
  int h = secs.dimension;
  Mat s0(pt, n, h);
  Mat s_inf_lau(d.phi.ring(), n, h);
  for (int c = 0; c < h; ++c)
    for (int i = 0; i < n; ++i) {
      s0.at(i, c) = secs.basis[static_cast<std::size_t>(c)].s0.at(i, 0);
      s_inf_lau.at(i, c) = secs.basis[static_cast<std::size_t>(c)].s_inf.at(i, 0);
    }
  Mat s_inf = to_s_polynomial(s_inf_lau, pt);
  EvaluationData out{std::move(secs), s0, s_inf, false};
  if (n == 0) {
    out.surjective = true;
    return out;
  }
  if (h == 0) return out;
  ModuleMap ev0(free_module(pt, h), free_module(pt, n), out.s0);
  ModuleMap evi(free_module(pt, h), free_module(pt, n), out.s_inf);
  out.surjective = is_surjective(ev0) && is_surjective(evi);
  return out;
}

int datum_search_cap(const Mat& phi) {
  int lo = laurent_min_exponent(phi, 0);
  int hi = laurent_max_exponent(phi, 0);
  int maxabs = std::max(std::abs(lo), std::abs(hi));
  return 4 * maxabs + phi.rows();
}

SplittingType profile_type(const TwoChartDatum& d) {
  int n = d.rank();
  if (n == 0) return SplittingType{{}};
  const Mat& phi = d.phi.matrix();
  int maxd = laurent_max_exponent(phi, 0);
  int vdet = det(phi).t_valuation();
  int start = -maxd - 1;
  int last = (n - 1) * std::max(maxd, 0) - vdet + 1;

  int prev_dim = global_sections(twist(d, start)).dimension;
  if (prev_dim != 0)
    throw InternalCheckFailure("section profile does not vanish below the window");
  std::vector<int> exps;
  int prev_count = 0;
  for (int j = start + 1; static_cast<int>(exps.size()) < n; ++j) {
    if (j > last + 1)
      throw BoundExceeded("splitting profile ran past its certified window at twist " +
                          std::to_string(j));
    int dim = global_sections(twist(d, j)).dimension;
    int count = dim - prev_dim;
    for (int r = prev_count; r < count; ++r) exps.push_back(-j);
    prev_dim = dim;
    prev_count = count;
  }
  SplittingType type{std::move(exps)};
  if (type.sum() != vdet)
    throw InternalCheckFailure("profile exponents disagree with the determinant valuation");
  return type;
}

}  // namespace

Reconstruction reconstruct(const TwoChartDatum& d) {
  const RingDesc& lau = d.phi.ring();
  BaseField f = lau.base_field();
  RingDesc pt = ring_poly(f);
  RingDesc rat = ring_rational_functions(f);
  int n = d.rank();

  int cap = datum_search_cap(d.phi.matrix());
  int n_twist = -1;
  EvaluationData ev{GlobalSections{}, Mat(pt, 0, 0), Mat(pt, 0, 0), false};
  for (int cand = 0; cand <= cap; ++cand) {
    ev = evaluation_data(twist(d, cand));
    if (ev.surjective) {
      n_twist = cand;
      break;
    }
  }
  if (n_twist < 0)
    throw BoundExceeded("no surjective twist up to the cap " + std::to_string(cap) +
                        " for a rank " + std::to_string(n) + " datum");

  int h = ev.sections.dimension;
  Mat k0 = kernel_basis(ev.s0);
  Mat ki = kernel_basis(ev.s_inf);
  if (k0.cols() != ki.cols())
    throw InternalCheckFailure("kernel ranks differ between the charts");
  int r = k0.cols();

  int m_twist = 0;
  bool presentation = true;
  ModuleMap ev0(free_module(pt, h), free_module(pt, n), ev.s0);
  ModuleMap evi(free_module(pt, h), free_module(pt, n), ev.s_inf);
  if (r == 0) {
    presentation = is_injective(ev0) && is_injective(evi);
  } else {
    auto psi_rat = solve_exact(k0.into(rat), from_s_polynomial(ki, lau).into(rat));
    if (!psi_rat) throw InternalCheckFailure("chart kernels do not span a common bundle");
    Mat psi(lau, r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        try {
          psi.at(i, j) = psi_rat->at(i, j).into(lau);
        } catch (const RingMismatch&) {
          throw InternalCheckFailure("kernel transition is not a Laurent matrix");
        }
      }
    TwoChartDatum kernel_datum = [&] {
      try {
        return make_two_chart(Cocycle(psi));
      } catch (const NonInvertible&) {
        throw InternalCheckFailure("kernel transition is not invertible");
      }
    }();

    int kcap = datum_search_cap(psi);
    EvaluationData evk{GlobalSections{}, Mat(pt, 0, 0), Mat(pt, 0, 0), false};
    m_twist = -1;
    for (int cand = 0; cand <= kcap; ++cand) {
      evk = evaluation_data(twist(kernel_datum, cand));
      if (evk.surjective) {
        m_twist = cand;
        break;
      }
    }
    if (m_twist < 0)
      throw BoundExceeded("no surjective twist up to the cap " + std::to_string(kcap) +
                          " for the kernel datum");

    Mat b0 = k0 * evk.s0;
    Mat bi = ki * evk.s_inf;
    int hk = evk.sections.dimension;
    ModuleMap in0(free_module(pt, hk), free_module(pt, h), b0);
    ModuleMap ini(free_module(pt, hk), free_module(pt, h), bi);
    presentation = is_zero_map(compose(ev0, in0)) && is_exact_pair(in0, ev0) &&
                   is_surjective(ev0) && is_zero_map(compose(evi, ini)) &&
                   is_exact_pair(ini, evi) && is_surjective(evi);
  }

  SplittingType type = profile_type(d);

  BirkhoffFactorization ft = birkhoff_factorize(d.phi.transposed());
  if (!(ft.type == type))
    throw InternalCheckFailure("profile type " + type.to_string() +
                               " disagrees with the factorization type " +
                               ft.type.to_string());
  Mat a0 = ft.m_plus.transposed();
  auto minus_inv = mat_inverse(ft.m_minus);
  if (!minus_inv) throw InternalCheckFailure("transposed factor lost invertibility");
  Mat a_inf = minus_inv->transposed();
  if (d.phi.matrix() * a_inf != a0 * diagonal_t_powers(lau, type.exponents))
    throw InternalCheckFailure("reconstruction witness identity failed");

  return Reconstruction{std::move(type), std::move(a0), std::move(a_inf),
                        n_twist, m_twist, presentation};
}

Cocycle random_cocycle(Rng& rng, const RingDesc& laurent, int n, int max_degree,
                       int height) {
  if (laurent.kind != RingKind::laurent)
    throw UnsupportedRing("random cocycle: Laurent ring expected");
  if (n <= 0) throw ShapeError("random cocycle rank must be positive");
  BaseField f = laurent.base_field();
  int unit_window = std::min(1, max_degree);

  for (int attempt = 0; attempt < 200; ++attempt) {
    Mat m = Mat::identity(laurent, n);
    Mat inv = Mat::identity(laurent, n);
    int ops = 2 * n + static_cast<int>(rng.below(3));
    for (int op = 0; op < ops; ++op) {
      if (n == 1 || rng.coin()) {
        int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        Scalar c = random_nonzero_scalar(rng, f, height);
        int e = rng.range(-unit_window, unit_window);
        RingElem u = RingElem::constant(laurent, c) * RingElem::t_power(laurent, e);
        RingElem ui = u.inverse();
        for (int row = 0; row < n; ++row) m.at(row, i) = m.at(row, i) * u;
        for (int col = 0; col < n; ++col) inv.at(i, col) = inv.at(i, col) * ui;
      } else {
        int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
        if (j >= i) ++j;
        RingElem lam = RingElem::from_fraction(laurent, random_poly(rng, f, 2, height),
                                               Poly::t_power(f, 1));
        if (lam.is_zero()) continue;
        // m *= (I + lam E_ij): column j gains lam * column i; the inverse
        // gains -lam * row j onto row i from the left.
        for (int row = 0; row < n; ++row)
          m.at(row, j) = m.at(row, j) + lam * m.at(row, i);
        for (int col = 0; col < n; ++col)
          inv.at(i, col) = inv.at(i, col) - lam * inv.at(j, col);
      }
    }
    if (laurent_max_exponent(m, 0) <= max_degree &&
        laurent_min_exponent(m, 0) >= -max_degree)
      return Cocycle(std::move(m), std::move(inv));
  }

  Mat m = Mat::identity(laurent, n);
  Mat inv = Mat::identity(laurent, n);
  for (int i = 0; i < n; ++i) {
    Scalar c = random_nonzero_scalar(rng, f, height);
    int e = rng.range(-unit_window, unit_window);
    m.at(i, i) = RingElem::constant(laurent, c) * RingElem::t_power(laurent, e);
    inv.at(i, i) = m.at(i, i).inverse();
  }
  return Cocycle(std::move(m), std::move(inv));
}

}  // namespace patchcat
