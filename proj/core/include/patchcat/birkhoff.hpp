#pragma once

#include <vector>

#include "patchcat/matrix.hpp"
#include "patchcat/module.hpp"
#include "patchcat/rng.hpp"

namespace patchcat {

/// Invertible square matrix over k[t,1/t] together with its inverse, the
/// transition datum of a rank-n bundle on the standard two-chart cover of
/// the projective line. Determinants of invertible Laurent matrices are
/// units c*t^m; construction throws NonInvertible otherwise.
class Cocycle {
 public:
  explicit Cocycle(Mat m);       // computes and validates the inverse
  Cocycle(Mat m, Mat inverse);   // validates both products against identity

  const RingDesc& ring() const { return m_.ring(); }
  int rank() const { return m_.rows(); }
  const Mat& matrix() const { return m_; }
  const Mat& inverse() const { return inv_; }
  Cocycle transposed() const { return Cocycle(m_.transposed(), inv_.transposed()); }
  bool operator==(const Cocycle& o) const { return m_ == o.m_; }

 private:
  Mat m_, inv_;
};

/// Descending exponent vector a_1 >= ... >= a_n. Grothendieck's theorem:
/// this classifies two-chart bundles up to isomorphism; the sum equals the
/// t-adic valuation of the cocycle determinant.
struct SplittingType {
  std::vector<int> exponents;

  int sum() const;
  bool is_trivial() const;  // all exponents zero
  bool operator==(const SplittingType&) const = default;
  std::string to_string() const;
};

/// Exponent window of a Laurent matrix over its nonzero entries.
int laurent_min_exponent(const Mat& m, int empty_value = 0);
int laurent_max_exponent(const Mat& m, int empty_value = 0);
/// Coefficient of t^e, entrywise, as a constant matrix over ring_scalars.
Mat laurent_coefficient(const Mat& m, int e);
/// Chart membership: all entry exponents >= 0 (k[t]) resp. <= 0 (k[1/t]).
bool is_chart_zero_matrix(const Mat& m);
bool is_chart_inf_matrix(const Mat& m);
/// Entrywise substitution s = 1/t. Laurent entries with exponents <= 0
/// become polynomials in s and back; coefficients are reversed in place.
Mat to_s_polynomial(const Mat& m, const RingDesc& poly_ring);
Mat from_s_polynomial(const Mat& m, const RingDesc& laurent_ring);

/// c = m_minus * diag(t^a) * m_plus, exactly, with m_minus invertible over
/// k[1/t] and m_plus invertible over k[t] (both stored over the Laurent
/// ring). Exponents are descending and sum to val det c. The constant term
/// m_minus(inf) is normalized to the identity whenever its inverse lies in
/// the block parabolic fixed by repeated exponents; when exponents are
/// pairwise distinct or all equal that ambiguity is the generic one and the
/// normalization applies blockwise regardless.
struct BirkhoffFactorization {
  Mat m_minus;
  SplittingType type;
  Mat m_plus;
};
BirkhoffFactorization birkhoff_factorize(const Cocycle& c);

/// Two free charts V0 = k[t]^n and Vinf = k[1/t]^n glued by phi. The inf
/// chart module lives over the polynomial ring with its variable read as
/// s = 1/t; all cross-chart identities are checked over the Laurent ring.
struct TwoChartDatum {
  PresentedModule v0;
  PresentedModule v_inf;
  Cocycle phi;

  int rank() const { return phi.rank(); }
};
TwoChartDatum make_two_chart(Cocycle phi);
/// Serre twist: phi -> t^n * phi, exact inverse carried along.
TwoChartDatum twist(const TwoChartDatum& d, int n);

/// Global section: s0 over k[t] and s_inf over k[1/t] (Laurent column,
/// exponents <= 0) with phi * s_inf = s0.
struct Section {
  Mat s0;
  Mat s_inf;
};
struct GlobalSections {
  int dimension = 0;
  std::vector<Section> basis;
};
/// Complete bounded-window coefficient solve. The window is derived from
/// the factorization degree bounds, so no section escapes it; the window
/// size is still guarded and throws BoundExceeded past a hard cap.
GlobalSections global_sections(const TwoChartDatum& d);

/// Splitting type of the bundle carried by the datum. Sections here are
/// column vectors (phi * s_inf = s0), which matches row-vector sections of
/// the transposed cocycle, so the bundle type is the factorization type of
/// phi^T. Cocycle equivalence classes c ~ A(1/t)*c*B(t) are classified by
/// birkhoff_factorize(c).type directly.
SplittingType bundle_type(const Cocycle& phi);

struct Reconstruction {
  SplittingType type;
  /// Isomorphism witness diag(t^type) -> d: phi * a_inf = a0 * diag(t^type)
  /// with a0 invertible over k[t] and a_inf invertible over k[1/t].
  Mat a0;
  Mat a_inf;
  /// Minimal twists making the evaluation maps of d resp. of the kernel
  /// datum surjective on both charts.
  int n_twist = 0;
  int m_twist = 0;
  /// Whether the two-step presentation (sections of the kernel twist) ->
  /// (sections of d(n))(m) -> d(n+m) -> 0 verified exact on both charts.
  bool presentation_exact = false;
};
/// Twist-and-present reconstruction: finds the surjective twist, forms the
/// kernel datum, presents d(n+m) by free charts, reads the splitting type
/// off the section-dimension profile, and cross-checks the result against
/// the factorization-derived type. Throws BoundExceeded when a search cap
/// (4 * max entry exponent + rank) is passed.
Reconstruction reconstruct(const TwoChartDatum& d);

/// Invertible Laurent cocycle sampled as a product of diagonal monomial
/// units and shears, rejection-filtered into the exponent window
/// [-max_degree, max_degree]; the exact inverse is accumulated alongside.
Cocycle random_cocycle(Rng& rng, const RingDesc& laurent, int n, int max_degree,
                       int height = 5);

}  // namespace patchcat
