#include "socr/classifier.hpp"

#include <cmath>

#include "socr/errors.hpp"
#include "socr/linalg.hpp"

namespace socr {

std::string_view to_string(Reason reason) {
  switch (reason) {
    case Reason::kDimAtMost4: return "DimAtMost4";
    case Reason::kSingularIndefiniteNormal: return "SingularIndefiniteNormal";
    case Reason::kFaceSlice: return "FaceSlice";
    case Reason::kFullCone: return "FullCone";
    case Reason::kNonsingularIndefiniteNormal: return "NonsingularIndefiniteNormal";
  }
  return "Unknown";
}

Verdict classify_orthogonal(const SymMat3& b, const ClassifyOptions& opts) {
  const double nb = b.norm();
  if (!(nb > 1e-12)) throw Error(ErrorCode::kZeroMatrix, "S_B with B = 0 is the whole cone");
  const SymMat3 unit = b * (1.0 / nb);
  const Inertia in = inertia(unit, opts.zero_tol);

  Verdict v;
  v.witness_b = b;
  if (!in.indefinite()) {
    const int r = in.rank();
    v.socr = true;
    v.reason = Reason::kFaceSlice;
    v.dim_s = (3 - r) * (4 - r) / 2;
    return v;
  }
  const double d = std::abs(unit.det());
  v.dim_s = 5;
  v.socr = d <= opts.det_tol;
  v.reason = v.socr ? Reason::kSingularIndefiniteNormal : Reason::kNonsingularIndefiniteNormal;
  v.marginal = d > 0.1 * opts.det_tol && d < 10.0 * opts.det_tol;
  return v;
}

bool singular_indefinite_by_minors(const SymMat3& b, double tol) {
  const double nb = b.norm();
  const double scale = std::max(1.0, nb * nb * nb);
  return std::abs(b.det()) <= tol * scale && b.principal_minor_sum() < -tol;
}

bool singular_indefinite_by_inertia(const SymMat3& b, double zero_tol) {
  const Inertia in = inertia(b, zero_tol);
  return in.n_plus >= 1 && in.n_minus >= 1 && in.n_zero >= 1;
}

SliceClassification classify_slice_detailed(const Subspace& l, const ClassifyOptions& opts) {
  SliceClassification out;
  out.description = slice_dimension(l, opts.facial);
  Verdict& v = out.verdict;
  const int dim = out.description.dim_s;
  v.dim_s = dim;
  if (dim == 6) {
    v.socr = false;
    v.reason = Reason::kFullCone;
    return out;
  }
  if (dim <= 4) {
    v.socr = true;
    v.reason = Reason::kDimAtMost4;
    return out;
  }

  // dim 5: the slice is S_B for the unique normal of span(S).
  const Subspace normal = orthogonal_complement(out.description.span_s);
  Vec6 nb = normal.basis.at(0);
  int big = 0;
  for (int i = 1; i < 6; ++i)
    if (std::abs(nb[i]) > std::abs(nb[big])) big = i;
  if (nb[big] < 0)
    for (double& x : nb) x = -x;
  const SymMat3 b = smat(nb);
  Verdict ob = classify_orthogonal(b, opts);
  if (ob.reason == Reason::kFaceSlice)
    throw Error(ErrorCode::kNumericalFailure,
                "normal of a 5-dimensional slice came out semidefinite");
  ob.dim_s = 5;
  ob.witness_b = b;
  v = ob;
  return out;
}

Verdict classify_slice(const Subspace& l, const ClassifyOptions& opts) {
  return classify_slice_detailed(l, opts).verdict;
}

bool minor_test_self_check() {
  const SymMat3 cases[] = {
      SymMat3::diag(1, -1, 0), SymMat3::diag(1, 1, 0),  SymMat3::diag(1, -1, -1),
      SymMat3::diag(0, 2, -3), SymMat3::diag(1, 0, 0),  SymMat3::identity(),
      {0, 1, 0, 0, -0.5, 0},   {1, 1, 0, 1, 0, 0},      {0, 0, 0, 1, 0, 0},
  };
  for (const SymMat3& b : cases)
    if (singular_indefinite_by_minors(b, 1e-9) != singular_indefinite_by_inertia(b, 1e-9))
      return false;
  return true;
}

}  // namespace socr
