#include "socr/linalg.hpp"

#include <algorithm>
#include <vector>

namespace socr {

double default_zero_tol(const SymMat3& a) {
  return std::max(1e-9 * std::max(1.0, a.norm()), 1e-14);
}

Inertia inertia(const SymMat3& a, double zero_tol) {
  if (zero_tol <= 0) zero_tol = default_zero_tol(a);
  const EigenTriple e = eigen_sym3(a);
  Inertia in;
  in.zero_tol = zero_tol;
  for (double l : e.values) {
    if (l > zero_tol) ++in.n_plus;
    else if (l < -zero_tol) ++in.n_minus;
    else ++in.n_zero;
  }
  return in;
}

CongruenceFactor congruence_factor(const SymMat3& b, double zero_tol) {
  if (zero_tol <= 0) zero_tol = default_zero_tol(b);
  const EigenTriple e = eigen_sym3(b);

  // Slots: positives (largest first), negatives (most negative first), zeros.
  std::vector<int> pos, neg, zero;
  for (int i = 2; i >= 0; --i)
    if (e.values[i] > zero_tol) pos.push_back(i);
  for (int i = 0; i < 3; ++i)
    if (e.values[i] < -zero_tol) neg.push_back(i);
  for (int i = 0; i < 3; ++i)
    if (std::abs(e.values[i]) <= zero_tol) zero.push_back(i);

  CongruenceFactor f;
  double dvals[3] = {0, 0, 0};
  int row = 0;
  auto emit = [&](int idx, double sign) {
    const double scale = sign == 0.0 ? 1.0 : std::sqrt(std::abs(e.values[idx]));
    for (int k = 0; k < 3; ++k) f.m[row][k] = scale * e.vectors[k][idx];
    dvals[row] = sign;
    ++row;
  };
  for (int i : pos) emit(i, 1.0);
  for (int i : neg) emit(i, -1.0);
  for (int i : zero) emit(i, 0.0);
  f.d = SymMat3::diag(dvals[0], dvals[1], dvals[2]);
  return f;
}

bool is_psd(const SymMat3& a, double tol) { return lambda_min(a) >= -tol; }

SymMat3 psd_project(const SymMat3& a) {
  const EigenTriple e = eigen_sym3(a);
  SymMat3 out;
  for (int i = 0; i < 3; ++i) {
    if (e.values[i] <= 0) continue;
    out += e.values[i] * SymMat3::outer(e.vector(i));
  }
  return out;
}

}  // namespace socr
