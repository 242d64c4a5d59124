#pragma once

#include "socr/sym_mat3.hpp"

namespace socr {

/// Spectrum in ascending order; vectors[.][i] is the unit eigenvector of values[i].
struct EigenTriple {
  Vec3 values{};
  Mat3 vectors{};

  Vec3 vector(int i) const { return {vectors[0][i], vectors[1][i], vectors[2][i]}; }
};

/// Cyclic Jacobi rotations run to machine precision. Eigenvector signs are
/// normalized so the largest-magnitude component is positive, which makes the
/// output a deterministic function of the input.
EigenTriple eigen_sym3(const SymMat3& a);

double lambda_min(const SymMat3& a);

struct Inertia {
  int n_plus = 0;
  int n_minus = 0;
  int n_zero = 0;
  double zero_tol = 0;

  bool operator==(const Inertia& o) const {
    return n_plus == o.n_plus && n_minus == o.n_minus && n_zero == o.n_zero;
  }
  bool indefinite() const { return n_plus > 0 && n_minus > 0; }
  int rank() const { return n_plus + n_minus; }
};

/// 1e-9 * max(1, |A|), floored at 1e-14.
double default_zero_tol(const SymMat3& a);

/// Counts eigenvalues above zero_tol, below -zero_tol, and in between.
/// A non-positive zero_tol selects default_zero_tol(a).
Inertia inertia(const SymMat3& a, double zero_tol = -1.0);

/// B = M^T D M with M regular and D = Diag(+1.., -1.., 0..).
struct CongruenceFactor {
  Mat3 m{};
  SymMat3 d{};
};

/// Rows of M are sqrt|l_i| u_i^T for nonzero eigenvalues and u_i^T for
/// (numerically) zero ones, ordered positive, negative, zero.
CongruenceFactor congruence_factor(const SymMat3& b, double zero_tol = -1.0);

bool is_psd(const SymMat3& a, double tol);
/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped).
SymMat3 psd_project(const SymMat3& a);

}  // namespace socr
