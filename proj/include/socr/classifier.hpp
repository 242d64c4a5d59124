#pragma once

#include <optional>
#include <string_view>

#include "socr/slice_geometry.hpp"
#include "socr/subspace.hpp"
#include "socr/sym_mat3.hpp"

namespace socr {

enum class Reason {
  kDimAtMost4,
  kSingularIndefiniteNormal,
  kFaceSlice,
  kFullCone,
  kNonsingularIndefiniteNormal,
};

std::string_view to_string(Reason reason);

struct Verdict {
  bool socr = false;
  Reason reason = Reason::kFullCone;
  int dim_s = 0;
  std::optional<SymMat3> witness_b;
  /// Set when |det| of the normalized normal sits within a factor 10 of
  /// det_tol, where the verdict flips under tiny perturbations.
  bool marginal = false;
};

struct ClassifyOptions {
  /// Singularity threshold on det(B / |B|).
  double det_tol = 1e-9;
  /// Zero threshold for the inertia of B / |B|.
  double zero_tol = 1e-9;
  FacialReductionOptions facial;
};

/// Verdict for the slice S_B = {A psd : <A, B> = 0}. Throws kZeroMatrix for
/// |B| <= 1e-12.
Verdict classify_orthogonal(const SymMat3& b, const ClassifyOptions& opts = {});

/// det(B) ~ 0 together with a negative sum of 2x2 principal minors. For a
/// singular B with nonzero eigenvalues l, m the minor sum is l*m, so the
/// sum is negative exactly when B is indefinite.
bool singular_indefinite_by_minors(const SymMat3& b, double tol);

/// Inertia-based counterpart used to cross-check the minor test.
bool singular_indefinite_by_inertia(const SymMat3& b, double zero_tol);

struct SliceClassification {
  Verdict verdict;
  SliceDescription description;
};

SliceClassification classify_slice_detailed(const Subspace& l, const ClassifyOptions& opts = {});
Verdict classify_slice(const Subspace& l, const ClassifyOptions& opts = {});

/// Checks the minor test against the inertia test on a fixed set of
/// matrices. Returns false on any disagreement.
bool minor_test_self_check();

}  // namespace socr
