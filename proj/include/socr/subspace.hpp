#pragma once

#include <span>
#include <vector>

#include "socr/sym_mat3.hpp"

namespace socr {

/// Linear subspace of S^3 held as an orthonormal basis in svec coordinates.
struct Subspace {
  std::vector<Vec6> basis;
  double orth_tol = 1e-12;

  int dim() const { return static_cast<int>(basis.size()); }

  static Subspace full();
  static Subspace zero() { return {}; }
};

/// Gram-Schmidt with column pivoting. Vectors whose residual falls below
/// rel_tol * (largest input norm) are treated as dependent.
Subspace orthonormal_basis(std::span<const Vec6> vectors, double rel_tol = 1e-10);
Subspace orthonormal_basis(std::span<const SymMat3> matrices, double rel_tol = 1e-10);

Subspace orthogonal_complement(const Subspace& l);

Vec6 project(const Subspace& l, const Vec6& v);
SymMat3 project(const Subspace& l, const SymMat3& a);

/// |v - P_L v|
double distance(const Subspace& l, const Vec6& v);
double distance(const Subspace& l, const SymMat3& a);

/// Vectors of `b` lying in `a` up to sine tolerance `tol` (principal
/// angles). The result is projected onto `a` and re-orthonormalized.
Subspace intersect(const Subspace& a, const Subspace& b, double tol = 1e-7);

/// Largest deviation of the basis Gram matrix from the identity.
double gram_error(const Subspace& l);

}  // namespace socr
