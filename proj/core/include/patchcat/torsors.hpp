#pragma once

#include <string>
#include <vector>

#include "patchcat/birkhoff.hpp"
#include "patchcat/patching.hpp"

namespace patchcat {

/// Matrix group selector. G_m is rank-1 units; GL(n) and SL(n) act through
/// n x n matrices over the relevant ring.
struct GroupDesc {
  enum class Kind { gm, gl, sl };
  Kind kind = Kind::gm;
  int n = 1;

  int rank() const { return kind == Kind::gm ? 1 : n; }
  bool is_abelian() const { return rank() == 1; }
  bool operator==(const GroupDesc&) const = default;
  std::string to_string() const;
};
GroupDesc group_gm();
GroupDesc group_gl(int n);
GroupDesc group_sl(int n);

/// Membership of a square matrix: invertible over its ring, with det = 1
/// for SL.
bool group_member(const GroupDesc& g, const Mat& m);

/// Supported torsor contexts: the one-point context on the affine line
/// (lanes local-at-zero and Laurent, overlap k(t)) and the two-chart
/// projective context (lanes k[1/t] and k[t], overlap k[t,1/t]).
enum class TorsorContext { bl, two_chart };
RingDesc overlap_ring(TorsorContext ctx, BaseField f);

/// A G-torsor given by its transition cocycle over the overlap ring.
struct TorsorDatum {
  TorsorContext context;
  GroupDesc group;
  Mat cocycle;
};
TorsorDatum make_torsor(TorsorContext ctx, const GroupDesc& g, Mat cocycle);

/// H^1 class of a torsor datum: a representative plus its normal form.
/// Over the affine-line context every class is trivial (glued modules over
/// the PID k[t] are free); over the two-chart context the normal form is
/// the splitting type of the cocycle (one exponent for G_m).
struct H1Class {
  TorsorDatum rep;
  std::vector<int> normal_form;
  bool trivial = false;
};

/// The connecting map g -> class of the datum (trivial lane carriers, glue
/// g). Classes are decided by module patching over the affine-line context
/// and by Birkhoff factorization over the two-chart context.
H1Class connecting_map(TorsorContext ctx, const GroupDesc& g, const Mat& cocycle);

/// H^0 of the equalizer diagram: elements of G over the lane product whose
/// two overlap restrictions agree. Verifies, within an exponent window plus
/// random samples, that the equalizer coincides with the image of the
/// global group (units of k[t] resp. constants).
struct H0Report {
  int window = 0;
  /// Number of equalizer elements found inside the window; -1 over Q where
  /// the unit group is infinite and only sampled witnesses are checked.
  int equalizer_count = 0;
  bool matches_global_image = false;
  bool passed = false;
  std::string detail;
};
H0Report h0_equalizer(TorsorContext ctx, const GroupDesc& g, BaseField f, Rng& rng,
                      int samples, int window);

/// Sampled exactness report for the six-term sequence
///   1 -> H0(X) -> H0(X0) -> H0(X1) -> H1(X) -> H1(X0) -> H1(X1).
/// The restriction-ratio map H0(X0) -> H0(X1) is oriented to match the
/// glue direction d1* -> d0* of equalizer objects, so kernel-equals-image
/// statements hold on the nose for nonabelian G as well.
struct SixTermReport {
  bool h0_injective = false;
  bool h0_equalizer_exact = false;
  bool h0_overlap_exact = false;
  bool h1_restriction_exact = false;
  bool h1_lane_exact = false;
  bool abelian_homomorphisms = false;
  bool passed = false;
  int samples_checked = 0;
  std::string detail;
};
/// `mutated_connecting` replaces the connecting map by the broken variant
/// that forgets the glue (treats every datum as already trivialized); the
/// overlap-exactness clause must then fail on nontrivial cocycles.
SixTermReport verify_six_term(TorsorContext ctx, const GroupDesc& g, BaseField f,
                              Rng& rng, int samples, int window,
                              bool mutated_connecting = false);

}  // namespace patchcat
