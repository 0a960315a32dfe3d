#include "patchcat/matrix.hpp"

#include <algorithm>

#include "patchcat/errors.hpp"

namespace patchcat {

Mat::Mat(RingDesc ring, int rows, int cols)
    : ring_(ring), rows_(rows), cols_(cols),
      e_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
         RingElem::zero(ring)) {
  if (rows < 0 || cols < 0) throw ShapeError("negative matrix dimension");
}

Mat Mat::identity(const RingDesc& r, int n) {
  Mat m(r, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = RingElem::one(r);
  return m;
}

Mat Mat::from_rows(const RingDesc& r, std::vector<std::vector<RingElem>> rows) {
  int nr = static_cast<int>(rows.size());
  int nc = nr == 0 ? 0 : static_cast<int>(rows[0].size());
  Mat m(r, nr, nc);
  for (int i = 0; i < nr; ++i) {
    if (static_cast<int>(rows[i].size()) != nc) throw ShapeError("ragged matrix rows");
    for (int j = 0; j < nc; ++j) {
      if (rows[i][j].ring() != r) throw RingMismatch("matrix entry in wrong ring");
      m.at(i, j) = std::move(rows[i][j]);
    }
  }
  return m;
}

RingElem& Mat::at(int i, int j) {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw ShapeError("matrix index out of range");
  return e_[static_cast<std::size_t>(i) * cols_ + j];
}

const RingElem& Mat::at(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) throw ShapeError("matrix index out of range");
  return e_[static_cast<std::size_t>(i) * cols_ + j];
}

Mat Mat::operator+(const Mat& o) const {
  if (ring_ != o.ring_ || rows_ != o.rows_ || cols_ != o.cols_)
    throw ShapeError("matrix shape/ring mismatch in +");
  Mat r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const { return *this + (-o); }

Mat Mat::operator-() const {
  Mat r = *this;
  for (auto& x : r.e_) x = -x;
  return r;
}

Mat Mat::operator*(const Mat& o) const {
  if (ring_ != o.ring_) throw RingMismatch("matrix ring mismatch in *");
  if (cols_ != o.rows_) throw ShapeError("inner dimensions disagree in matrix product");
  Mat r(ring_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const RingElem& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const RingElem& b = o.at(k, j);
        if (b.is_zero()) continue;
        r.at(i, j) = r.at(i, j) + a * b;
      }
    }
  return r;
}

Mat Mat::scaled(const RingElem& c) const {
  Mat r = *this;
  for (auto& x : r.e_) x = x * c;
  return r;
}

bool Mat::operator==(const Mat& o) const {
  if (ring_ != o.ring_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] != o.e_[i]) return false;
  return true;
}

Mat Mat::transposed() const {
  Mat r(ring_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Mat Mat::mapped(const RingHom& h) const {
  Mat r(h.target(), rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = h.apply(at(i, j));
  return r;
}

Mat Mat::into(const RingDesc& target) const {
  Mat r(target, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j).into(target);
  return r;
}

Mat Mat::submatrix(int i0, int j0, int nrows, int ncols) const {
  Mat r(ring_, nrows, ncols);
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j) r.at(i, j) = at(i0 + i, j0 + j);
  return r;
}

Mat Mat::hcat(const Mat& a, const Mat& b) {
  if (a.ring_ != b.ring_ || a.rows_ != b.rows_) throw ShapeError("hcat mismatch");
  Mat r(a.ring_, a.rows_, a.cols_ + b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < a.cols_; ++j) r.at(i, j) = a.at(i, j);
    for (int j = 0; j < b.cols_; ++j) r.at(i, a.cols_ + j) = b.at(i, j);
  }
  return r;
}

Mat Mat::vcat(const Mat& a, const Mat& b) {
  if (a.ring_ != b.ring_ || a.cols_ != b.cols_) throw ShapeError("vcat mismatch");
  Mat r(a.ring_, a.rows_ + b.rows_, a.cols_);
  for (int j = 0; j < a.cols_; ++j) {
    for (int i = 0; i < a.rows_; ++i) r.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows_; ++i) r.at(a.rows_ + i, j) = b.at(i, j);
  }
  return r;
}

Mat Mat::kronecker(const Mat& a, const Mat& b) {
  if (a.ring_ != b.ring_) throw RingMismatch("kronecker ring mismatch");
  Mat r(a.ring_, a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j)
      for (int k = 0; k < b.rows_; ++k)
        for (int l = 0; l < b.cols_; ++l)
          r.at(i * b.rows_ + k, j * b.cols_ + l) = a.at(i, j) * b.at(k, l);
  return r;
}

bool Mat::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  return *this == identity(ring_, rows_);
}

int Mat::max_degree_size() const {
  int d = 0;
  for (const auto& x : e_)
    if (!x.is_zero()) d = std::max(d, x.degree_size());
  return d;
}

std::string Mat::to_string() const {
  std::string out = "[";
  for (int i = 0; i < rows_; ++i) {
    if (i) out += "; ";
    for (int j = 0; j < cols_; ++j) {
      if (j) out += ", ";
      out += at(i, j).to_string();
    }
  }
  out += "]";
  return out;
}

// ---------------------------------------------------------------------------
// Euclidean structure of the supported kinds.
// ---------------------------------------------------------------------------

namespace {

long euclid_norm(const RingElem& a) {
  switch (a.ring().kind) {
    case RingKind::poly:
      return a.num().degree();
    case RingKind::laurent:
      return a.num().degree() - static_cast<long>(a.num().t_valuation());
    case RingKind::local_at_zero:
      return a.t_valuation();
    default:
      return 0;
  }
}

// a = q*b + r with r zero or euclid_norm(r) < euclid_norm(b)
std::pair<RingElem, RingElem> euclid_divmod(const RingElem& a, const RingElem& b) {
  const RingDesc& r = a.ring();
  if (b.is_zero()) throw ShapeError("euclidean division by zero");
  if (a.is_zero()) return {RingElem::zero(r), RingElem::zero(r)};
  switch (r.kind) {
    case RingKind::prime_field:
    case RingKind::rationals:
    case RingKind::rational_functions:
      return {a.divide_exact(b), RingElem::zero(r)};
    case RingKind::poly: {
      auto [q, rem] = a.num().divmod(b.num());
      return {RingElem::from_fraction(r, q, Poly::one(r.base_field())),
              RingElem::from_fraction(r, rem, Poly::one(r.base_field()))};
    }
    case RingKind::laurent: {
      // strip t powers, divide the polynomial parts, shift back
      auto strip = [&](const RingElem& x) {
        std::size_t v = x.num().t_valuation();
        Poly p = Poly::zero(r.base_field());
        std::vector<Scalar> cs(x.num().coeffs().begin() + static_cast<long>(v),
                               x.num().coeffs().end());
        return std::pair<Poly, int>(Poly(r.base_field(), cs), x.t_valuation());
      };
      auto [pa, va] = strip(a);
      auto [pb, vb] = strip(b);
      auto [q, rem] = pa.divmod(pb);
      RingElem qe = RingElem::from_fraction(r, q, Poly::one(r.base_field())) *
                    RingElem::t_power(r, va - vb);
      return {qe, a - qe * b};
    }
    case RingKind::local_at_zero: {
      if (a.t_valuation() >= b.t_valuation()) return {a.divide_exact(b), RingElem::zero(r)};
      return {RingElem::zero(r), a};
    }
  }
  throw UnsupportedRing("divmod unsupported");
}

bool divides(const RingElem& a, const RingElem& b) {
  if (b.is_zero()) return true;
  if (a.is_zero()) return false;
  return euclid_divmod(b, a).second.is_zero();
}

// unit u with u*x the canonical associate of x
RingElem canonical_unit(const RingElem& x) {
  const RingDesc& r = x.ring();
  if (x.is_zero()) return RingElem::one(r);
  switch (r.kind) {
    case RingKind::prime_field:
    case RingKind::rationals:
    case RingKind::rational_functions:
      return x.inverse();
    case RingKind::poly:
      return RingElem::constant(r, x.num().leading().inverse());
    case RingKind::laurent: {
      int v = x.t_valuation();
      RingElem u = RingElem::t_power(r, -v);
      return u * RingElem::constant(r, x.num().leading().inverse());
    }
    case RingKind::local_at_zero: {
      int v = x.t_valuation();
      RingElem w = x.divide_exact(RingElem::t_power(r, v));
      return w.inverse();
    }
  }
  throw UnsupportedRing("canonical unit unsupported");
}

}  // namespace

SnfResult smith_normal_form(const Mat& m) {
  const RingDesc& ring = m.ring();
  Mat d = m;
  Mat u = Mat::identity(ring, m.rows());
  Mat v = Mat::identity(ring, m.cols());
  int n = std::min(m.rows(), m.cols());

  auto swap_rows = [&](Mat& a, int r1, int r2) {
    for (int j = 0; j < a.cols(); ++j) std::swap(a.at(r1, j), a.at(r2, j));
  };
  auto swap_cols = [&](Mat& a, int c1, int c2) {
    for (int i = 0; i < a.rows(); ++i) std::swap(a.at(i, c1), a.at(i, c2));
  };
  auto row_op = [&](Mat& a, int dst, int src, const RingElem& c) {
    // row_dst += c * row_src
    for (int j = 0; j < a.cols(); ++j) a.at(dst, j) = a.at(dst, j) + c * a.at(src, j);
  };
  auto col_op = [&](Mat& a, int dst, int src, const RingElem& c) {
    for (int i = 0; i < a.rows(); ++i) a.at(i, dst) = a.at(i, dst) + c * a.at(i, src);
  };

  for (int k = 0; k < n; ++k) {
    for (;;) {
      // deterministic minimal-norm pivot in the trailing submatrix
      int pi = -1, pj = -1;
      long best = 0;
      for (int i = k; i < d.rows(); ++i)
        for (int j = k; j < d.cols(); ++j) {
          if (d.at(i, j).is_zero()) continue;
          long nn = euclid_norm(d.at(i, j));
          if (pi < 0 || nn < best) {
            pi = i;
            pj = j;
            best = nn;
          }
        }
      if (pi < 0) { k = n; break; }  // trailing block is zero; done
      if (pi != k) { swap_rows(d, k, pi); swap_rows(u, k, pi); }
      if (pj != k) { swap_cols(d, k, pj); swap_cols(v, k, pj); }

      bool clean = true;
      for (int i = k + 1; i < d.rows(); ++i) {
        if (d.at(i, k).is_zero()) continue;
        RingElem q = euclid_divmod(d.at(i, k), d.at(k, k)).first;
        row_op(d, i, k, -q);
        row_op(u, i, k, -q);
        if (!d.at(i, k).is_zero()) clean = false;
      }
      for (int j = k + 1; j < d.cols(); ++j) {
        if (d.at(k, j).is_zero()) continue;
        RingElem q = euclid_divmod(d.at(k, j), d.at(k, k)).first;
        col_op(d, j, k, -q);
        col_op(v, j, k, -q);
        if (!d.at(k, j).is_zero()) clean = false;
      }
      if (!clean) continue;

      // enforce the divisibility chain before moving on
      bool fixed = false;
      for (int i = k + 1; i < d.rows() && !fixed; ++i)
        for (int j = k + 1; j < d.cols() && !fixed; ++j)
          if (!divides(d.at(k, k), d.at(i, j))) {
            row_op(d, k, i, RingElem::one(ring));
            row_op(u, k, i, RingElem::one(ring));
            fixed = true;
          }
      if (!fixed) break;
    }
    if (k >= n) break;
  }

  for (int i = 0; i < n; ++i) {
    if (d.at(i, i).is_zero()) continue;
    RingElem c = canonical_unit(d.at(i, i));
    if (c.is_one()) continue;
    for (int j = 0; j < d.cols(); ++j) d.at(i, j) = d.at(i, j) * c;
    for (int j = 0; j < u.cols(); ++j) u.at(i, j) = u.at(i, j) * c;
  }
  return {u, d, v};
}

RingElem det(const Mat& m) {
  if (m.rows() != m.cols()) throw ShapeError("determinant of non-square matrix");
  const RingDesc& ring = m.ring();
  if (m.rows() == 0) return RingElem::one(ring);
  RingDesc frac =
      ring.is_base_field_kind() ? ring : ring_rational_functions(ring.base_field());
  Mat w = m.into(frac);
  RingElem result = RingElem::one(frac);
  int n = w.rows();
  for (int k = 0; k < n; ++k) {
    int pivot = -1;
    for (int i = k; i < n; ++i)
      if (!w.at(i, k).is_zero()) { pivot = i; break; }
    if (pivot < 0) return RingElem::zero(ring);
    if (pivot != k) {
      for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(pivot, j));
      result = -result;
    }
    result = result * w.at(k, k);
    RingElem inv = w.at(k, k).inverse();
    for (int i = k + 1; i < n; ++i) {
      if (w.at(i, k).is_zero()) continue;
      RingElem f = w.at(i, k) * inv;
      for (int j = k; j < n; ++j) w.at(i, j) = w.at(i, j) - f * w.at(k, j);
    }
  }
  return result.into(ring);
}

std::optional<Mat> mat_inverse(const Mat& m) {
  if (m.rows() != m.cols()) throw ShapeError("inverse of non-square matrix");
  SnfResult s = smith_normal_form(m);
  Mat dinv(m.ring(), m.rows(), m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    const RingElem& di = s.d.at(i, i);
    if (!di.is_unit()) return std::nullopt;
    dinv.at(i, i) = di.inverse();
  }
  return s.v * dinv * s.u;
}

std::optional<Mat> solve_exact(const Mat& m, const Mat& rhs) {
  if (m.ring() != rhs.ring() || m.rows() != rhs.rows())
    throw ShapeError("solve_exact shape/ring mismatch");
  SnfResult s = smith_normal_form(m);
  Mat y = s.u * rhs;
  int n = std::min(m.rows(), m.cols());
  Mat q(m.ring(), m.cols(), rhs.cols());
  for (int i = 0; i < m.rows(); ++i) {
    bool has_pivot = i < n && !s.d.at(i, i).is_zero();
    for (int j = 0; j < rhs.cols(); ++j) {
      if (has_pivot) {
        if (!divides(s.d.at(i, i), y.at(i, j))) return std::nullopt;
        q.at(i, j) = y.at(i, j).is_zero() ? RingElem::zero(m.ring())
                                          : y.at(i, j).divide_exact(s.d.at(i, i));
      } else if (!y.at(i, j).is_zero()) {
        return std::nullopt;
      }
    }
  }
  return s.v * q;
}

Mat kernel_basis(const Mat& m) {
  SnfResult s = smith_normal_form(m);
  int n = std::min(m.rows(), m.cols());
  std::vector<int> free_cols;
  for (int j = 0; j < m.cols(); ++j)
    if (j >= n || s.d.at(j, j).is_zero()) free_cols.push_back(j);
  Mat k(m.ring(), m.cols(), static_cast<int>(free_cols.size()));
  for (int c = 0; c < static_cast<int>(free_cols.size()); ++c)
    for (int i = 0; i < m.cols(); ++i) k.at(i, c) = s.v.at(i, free_cols[c]);
  return k;
}

// ---------------------------------------------------------------------------
// Bounded-degree ansatz solve.
// ---------------------------------------------------------------------------

namespace {

// coefficient of t^e in a poly or laurent element
Scalar t_coeff(const RingElem& x, int e) {
  int denpow = x.den().degree();  // den = t^denpow for laurent, 1 for poly
  int idx = e + denpow;
  if (idx < 0) return Scalar::zero(x.ring().base_field());
  return x.num().coeff(static_cast<std::size_t>(idx));
}

int min_exp(const RingElem& x) {
  return static_cast<int>(x.num().t_valuation()) - x.den().degree();
}
int max_exp(const RingElem& x) { return x.num().degree() - x.den().degree(); }

}  // namespace

std::optional<Mat> solve_linear(const Mat& m, const Mat& rhs, int degree_bound) {
  if (m.ring() != rhs.ring() || m.rows() != rhs.rows())
    throw ShapeError("solve_linear shape/ring mismatch");
  const RingDesc& ring = m.ring();
  if (degree_bound < 0) throw ShapeError("negative degree bound");

  // field kinds and the local ring admit an exact complete solve
  if (ring.is_field() || ring.kind == RingKind::local_at_zero) return solve_exact(m, rhs);

  bool laurent = ring.kind == RingKind::laurent;
  int lo = laurent ? -degree_bound : 0;
  int hi = degree_bound;
  int w = hi - lo + 1;
  int nx = m.cols(), nj = rhs.cols();
  BaseField base = ring.base_field();

  // global exponent window of the equations
  int e_lo = 0, e_hi = 0;
  bool any = false;
  auto widen = [&](int a, int b) {
    if (!any) { e_lo = a; e_hi = b; any = true; }
    else { e_lo = std::min(e_lo, a); e_hi = std::max(e_hi, b); }
  };
  for (int i = 0; i < m.rows(); ++i)
    for (int k = 0; k < nx; ++k)
      if (!m.at(i, k).is_zero()) widen(min_exp(m.at(i, k)) + lo, max_exp(m.at(i, k)) + hi);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < nj; ++j)
      if (!rhs.at(i, j).is_zero()) widen(min_exp(rhs.at(i, j)), max_exp(rhs.at(i, j)));
  if (!any) return Mat(ring, nx, nj);  // both sides zero

  ScalarSystem sys(base, nx * nj * w);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < nj; ++j)
      for (int e = e_lo; e <= e_hi; ++e) {
        std::vector<Scalar> row(static_cast<std::size_t>(nx) * nj * w, Scalar::zero(base));
        bool nontrivial = false;
        for (int k = 0; k < nx; ++k) {
          const RingElem& c = m.at(i, k);
          if (c.is_zero()) continue;
          for (int d = 0; d < w; ++d) {
            Scalar s = t_coeff(c, e - (lo + d));
            if (s.is_zero()) continue;
            std::size_t id = (static_cast<std::size_t>(k) * nj + j) * w + d;
            row[id] = row[id] + s;
            nontrivial = true;
          }
        }
        Scalar b = t_coeff(rhs.at(i, j), e);
        if (nontrivial || !b.is_zero()) sys.add_equation(std::move(row), b);
      }

  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  Mat x(ring, nx, nj);
  for (int k = 0; k < nx; ++k)
    for (int j = 0; j < nj; ++j) {
      RingElem acc = RingElem::zero(ring);
      for (int d = 0; d < w; ++d) {
        const Scalar& c = (*sol)[(static_cast<std::size_t>(k) * nj + j) * w + d];
        if (c.is_zero()) continue;
        acc = acc + RingElem::constant(ring, c) * RingElem::t_power(ring, lo + d);
      }
      x.at(k, j) = acc;
    }
  return x;
}

int cramer_degree_bound(const Mat& m, const Mat& rhs) {
  int total = 2;
  for (int i = 0; i < m.rows(); ++i) {
    int row_max = 0;
    for (int j = 0; j < m.cols(); ++j)
      if (!m.at(i, j).is_zero()) row_max = std::max(row_max, m.at(i, j).degree_size());
    total += row_max;
  }
  total += rhs.max_degree_size();
  return total;
}

// ---------------------------------------------------------------------------
// Base-field Gaussian elimination.
// ---------------------------------------------------------------------------

void ScalarSystem::add_equation(std::vector<Scalar> coeffs, Scalar rhs) {
  if (static_cast<int>(coeffs.size()) != unknowns_)
    throw ShapeError("equation width mismatch");
  rows_.push_back(std::move(coeffs));
  rhs_.push_back(std::move(rhs));
}

namespace {

struct Echelon {
  std::vector<std::vector<Scalar>> rows;
  std::vector<Scalar> rhs;
  std::vector<int> pivot_col;  // per eliminated row
  bool consistent = true;
};

Echelon eliminate(std::vector<std::vector<Scalar>> rows, std::vector<Scalar> rhs,
                  int unknowns) {
  Echelon e;
  e.rows = std::move(rows);
  e.rhs = std::move(rhs);
  std::size_t rank = 0;
  for (int c = 0; c < unknowns && rank < e.rows.size(); ++c) {
    std::size_t p = rank;
    while (p < e.rows.size() && e.rows[p][c].is_zero()) ++p;
    if (p == e.rows.size()) continue;
    std::swap(e.rows[rank], e.rows[p]);
    std::swap(e.rhs[rank], e.rhs[p]);
    Scalar inv = e.rows[rank][c].inverse();
    for (int j = c; j < unknowns; ++j) e.rows[rank][j] = e.rows[rank][j] * inv;
    e.rhs[rank] = e.rhs[rank] * inv;
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
      if (i == rank || e.rows[i][c].is_zero()) continue;
      Scalar fct = e.rows[i][c];
      for (int j = c; j < unknowns; ++j)
        e.rows[i][j] = e.rows[i][j] - fct * e.rows[rank][j];
      e.rhs[i] = e.rhs[i] - fct * e.rhs[rank];
    }
    e.pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t i = e.pivot_col.size(); i < e.rows.size(); ++i)
    if (!e.rhs[i].is_zero()) e.consistent = false;
  return e;
}

}  // namespace

std::optional<std::vector<Scalar>> ScalarSystem::solve() const {
  Echelon e = eliminate(rows_, rhs_, unknowns_);
  if (!e.consistent) return std::nullopt;
  std::vector<Scalar> x(static_cast<std::size_t>(unknowns_), Scalar::zero(field_));
  for (std::size_t r = 0; r < e.pivot_col.size(); ++r)
    x[static_cast<std::size_t>(e.pivot_col[r])] = e.rhs[r];
  return x;
}

std::vector<std::vector<Scalar>> ScalarSystem::nullspace() const {
  std::vector<Scalar> zero_rhs(rows_.size(), Scalar::zero(field_));
  Echelon e = eliminate(rows_, zero_rhs, unknowns_);
  std::vector<bool> is_pivot(static_cast<std::size_t>(unknowns_), false);
  for (int c : e.pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int c = 0; c < unknowns_; ++c) {
    if (is_pivot[static_cast<std::size_t>(c)]) continue;
    std::vector<Scalar> v(static_cast<std::size_t>(unknowns_), Scalar::zero(field_));
    v[static_cast<std::size_t>(c)] = Scalar::one(field_);
    for (std::size_t r = 0; r < e.pivot_col.size(); ++r)
      v[static_cast<std::size_t>(e.pivot_col[r])] = -e.rows[r][static_cast<std::size_t>(c)];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace patchcat
