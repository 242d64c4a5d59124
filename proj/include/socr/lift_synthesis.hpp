#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "socr/classifier.hpp"
#include "socr/slice_geometry.hpp"
#include "socr/subspace.hpp"
#include "socr/sym_mat3.hpp"

namespace socr {

/// z = (w1, w2, w3, v1, v2, v3): two Lorentz triples with the radial
/// coordinate last, w3 >= |(w1, w2)| and v3 >= |(v1, v2)|.
using Q2Point = Vec6;

/// min over both triples of x3 - |(x1, x2)|; >= 0 on Q^2.
double q2_margin(const Q2Point& z);
bool in_q2(const Q2Point& z, double tol);

using Mat6 = std::array<std::array<double, 6>, 6>;

enum class Provenance { kCanonical, kCongruenceConjugated, kFaceEmbedding, kSlicedCongruence };

std::string_view to_string(Provenance p);
std::optional<Provenance> provenance_from_string(std::string_view s);

/// Claim: S = { smat(G z) : z in Q^2, E z = 0 }.
struct LiftCertificate {
  static constexpr int m = 2;
  Mat6 g{};              // svec(X) = G z
  std::vector<Vec6> e;   // rows of E
  Provenance provenance = Provenance::kCanonical;
  /// Congruence M with A -> M A M^T mapping the slice into the canonical one.
  std::optional<Mat3> conjugation;
  /// Orthonormal range basis of the face for face embeddings.
  std::vector<Vec3> range_basis;

  Vec6 apply(const Q2Point& z) const;
  /// Numerical rank of E.
  int e_rank() const;
};

/// The lift of {A psd : a11 = a22}: both Lorentz triples go through the
/// rotated-cone isomorphism (r1, r2, r3) = (x2, x3 - x1, x3 + x1), giving
///   a11 = a22 = (w3 - w1) + (v3 - v1),  a12 = (w3 - w1) - (v3 - v1),
///   a13 = w2 + v2,  a23 = w2 - v2,  a33 = (w3 + w1) + (v3 + v1).
LiftCertificate canonical_lift();

struct Preimage {
  Q2Point z{};
  double residual = 0;  // |G z - svec(A)|, |E z| combined, relative to max(1, |A|)
  double u_lo = 0, u_hi = 0, u = 0;  // free parameter interval (canonical route)
};

/// Solves G z = svec(A), E z = 0 with z in Q^2. tol is relative to
/// max(1, |A|). Throws kNotInSlice when A misses the slice equations and
/// kEmptyInterval when A is not psd within tolerance.
Preimage preimage(const LiftCertificate& cert, const SymMat3& a, double tol);

/// Lift of S_B for singular indefinite B, conjugated from the canonical one.
/// Throws kNotSingularIndefinite otherwise.
LiftCertificate lift_orthogonal_singular(const SymMat3& b, const ClassifyOptions& opts = {});

/// Unit-norm B in L-perp with lambda_2(B) = 0 and lambda_1 < 0 < lambda_3,
/// found by bisection on the sign of lambda_2 along a half circle in L-perp.
/// Requires dim L <= 4 and a positive definite element in L.
SymMat3 find_singular_complement(const Subspace& l, const FacialReductionOptions& opts = {});

/// Same, with the positive definite precondition taken on trust.
SymMat3 find_singular_complement_unchecked(const Subspace& l);

/// Lift of a slice contained in a proper face (witness rank <= 2).
LiftCertificate face_lift(const Subspace& l, const MaxRankWitness& witness,
                          const FacialReductionOptions& opts = {});

struct LiftOptions {
  ClassifyOptions classify;
  int verify_forward_samples = 256;
  int verify_backward_samples = 16;
  double forward_tol = 1e-8;
  double backward_tol = 1e-7;
  std::uint64_t seed = 0;
  bool self_verify = true;
};

/// Certificate for any socr slice, self-verified before it is returned.
/// Throws kNotSocr for non-socr slices and kNumericalFailure if the
/// certificate fails its own verification.
LiftCertificate lift_slice(const Subspace& l, const LiftOptions& opts = {});
/// Same, reusing a classification of l computed with opts.classify.
LiftCertificate lift_slice(const Subspace& l, const SliceClassification& cls,
                           const LiftOptions& opts = {});

/// Orthonormal basis of the row space of `rows` (relative threshold).
std::vector<Vec6> compress_rows(const std::vector<Vec6>& rows, double rel_tol = 1e-9);

}  // namespace socr
