#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "patchcat/ring.hpp"

namespace patchcat {

/// Dense matrix over one of the supported rings, row-major.
class Mat {
 public:
  Mat(RingDesc ring, int rows, int cols);  // zero-filled
  static Mat identity(const RingDesc& r, int n);
  static Mat from_rows(const RingDesc& r, std::vector<std::vector<RingElem>> rows);

  const RingDesc& ring() const { return ring_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  RingElem& at(int i, int j);
  const RingElem& at(int i, int j) const;

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat operator-() const;
  Mat scaled(const RingElem& c) const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transposed() const;
  Mat mapped(const RingHom& h) const;      // entrywise hom application
  Mat into(const RingDesc& r) const;       // entrywise reinterpretation
  Mat submatrix(int i0, int j0, int nrows, int ncols) const;
  /// Horizontal / vertical concatenation.
  static Mat hcat(const Mat& a, const Mat& b);
  static Mat vcat(const Mat& a, const Mat& b);
  static Mat kronecker(const Mat& a, const Mat& b);

  bool is_zero() const;
  bool is_identity() const;
  int max_degree_size() const;  // max entry degree_size, 0 for empty
  std::string to_string() const;

 private:
  RingDesc ring_;
  int rows_, cols_;
  std::vector<RingElem> e_;
};

/// U * m * V = D with U, V invertible over the ring and D diagonal with the
/// divisibility chain d_i | d_{i+1}; diagonal entries are canonical
/// associates (monic for k[t]; monic with nonzero constant term for the
/// Laurent ring; powers of t for the local ring; 1 over fields).
struct SnfResult {
  Mat u, d, v;
};
SnfResult smith_normal_form(const Mat& m);  // throws UnsupportedRing

RingElem det(const Mat& m);  // square only

/// Inverse over the ring itself (entries stay in the ring), or nullopt.
std::optional<Mat> mat_inverse(const Mat& m);

/// Exact linear solve m * x = rhs over the ring, complete for every
/// supported kind (Smith form based). No degree constraint on x.
std::optional<Mat> solve_exact(const Mat& m, const Mat& rhs);

/// Basis of {x : m * x = 0} as columns of a matrix (free over a PID).
Mat kernel_basis(const Mat& m);

/// Bounded-degree solve of m * x = rhs. For k[t] the unknown entries range
/// over polynomials of degree <= degree_bound, for k[t,1/t] over t-powers
/// in [-degree_bound, degree_bound]; both reduce to base-field linear
/// algebra on coefficients and are complete within the bound. For the field
/// kinds and the local ring the solve is exact and the bound is not needed.
std::optional<Mat> solve_linear(const Mat& m, const Mat& rhs, int degree_bound);

/// Certified ansatz bound from Cramer-rule degree estimates: the sum over
/// rows of the largest entry degree, plus the largest degree in rhs, plus
/// slack 2.
int cramer_degree_bound(const Mat& m, const Mat& rhs);

/// Dense Gaussian elimination over a base field; used by the coefficient
/// ansatz, section spaces and dimension counts.
class ScalarSystem {
 public:
  ScalarSystem(BaseField f, int unknowns) : field_(f), unknowns_(unknowns) {}
  void add_equation(std::vector<Scalar> coeffs, Scalar rhs);
  int unknowns() const { return unknowns_; }

  /// Particular solution with free variables set to zero, or nullopt.
  std::optional<std::vector<Scalar>> solve() const;
  /// Basis of the homogeneous solution space (ignores the rhs column).
  std::vector<std::vector<Scalar>> nullspace() const;

 private:
  BaseField field_;
  int unknowns_;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<Scalar> rhs_;
};

}  // namespace patchcat
