#pragma once

#include <cstdint>

#include "patchcat/matrix.hpp"

namespace patchcat {

/// Deterministic 64-bit generator (splitmix64). Sampling goes through this
/// class only, so streams are reproducible across platforms and standard
/// library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, n), n > 0 (rejection-free modulo bias is acceptable at
  /// the tiny ranges used here, but we reject to keep streams exact).
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi] inclusive.
  int range(int lo, int hi);
  bool coin() { return below(2) == 1; }

 private:
  std::uint64_t state_;
};

/// Uniform scalar; over Q numerator in [-height, height], denominator in
/// [1, height].
Scalar random_scalar(Rng& rng, BaseField f, int height = 5);
Scalar random_nonzero_scalar(Rng& rng, BaseField f, int height = 5);

/// Polynomial with degree <= max_degree (zero allowed).
Poly random_poly(Rng& rng, BaseField f, int max_degree, int height = 5);

/// Ring element with numerator/denominator degrees <= max_degree, honoring
/// the kind invariants (Laurent t-powers range over [-max_degree, 0]).
RingElem random_elem(Rng& rng, const RingDesc& r, int max_degree, int height = 5);
RingElem random_unit(Rng& rng, const RingDesc& r, int max_degree, int height = 5);

Mat random_mat(Rng& rng, const RingDesc& r, int rows, int cols, int max_degree,
               int height = 5);

/// Invertible matrix built as a product of `ops` random elementary
/// operations (unit scalings, transvections, swaps) applied to the identity.
Mat random_invertible(Rng& rng, const RingDesc& r, int n, int ops, int max_degree,
                      int height = 5);

}  // namespace patchcat
