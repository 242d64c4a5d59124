#include "socr/subspace.hpp"

#include <Eigen/Dense>
#include <algorithm>

namespace socr {

namespace {

void axpy(double a, const Vec6& x, Vec6& y) {
  for (int i = 0; i < 6; ++i) y[i] += a * x[i];
}

}  // namespace

Subspace Subspace::full() {
  Subspace s;
  for (int i = 0; i < 6; ++i) {
    Vec6 e{};
    e[i] = 1.0;
    s.basis.push_back(e);
  }
  return s;
}

Subspace orthonormal_basis(std::span<const Vec6> vectors, double rel_tol) {
  std::vector<Vec6> work(vectors.begin(), vectors.end());
  double max_norm = 0.0;
  for (const auto& v : work) max_norm = std::max(max_norm, norm(v));

  Subspace out;
  if (max_norm == 0.0) return out;
  const double threshold = rel_tol * max_norm;

  std::vector<bool> used(work.size(), false);
  while (out.dim() < 6) {
    int pivot = -1;
    double best = threshold;
    for (size_t i = 0; i < work.size(); ++i) {
      if (used[i]) continue;
      const double r = norm(work[i]);
      if (r > best) {
        best = r;
        pivot = static_cast<int>(i);
      }
    }
    if (pivot < 0) break;
    used[pivot] = true;

    Vec6 q = work[pivot];
    // Second pass against the accepted basis restores orthogonality lost to
    // cancellation.
    for (const auto& b : out.basis) axpy(-dot(b, q), b, q);
    const double qn = norm(q);
    for (double& x : q) x /= qn;
    out.basis.push_back(q);

    for (size_t i = 0; i < work.size(); ++i)
      if (!used[i]) axpy(-dot(q, work[i]), q, work[i]);
  }
  return out;
}

Subspace orthonormal_basis(std::span<const SymMat3> matrices, double rel_tol) {
  std::vector<Vec6> v;
  v.reserve(matrices.size());
  for (const auto& m : matrices) v.push_back(svec(m));
  return orthonormal_basis(v, rel_tol);
}

Subspace orthogonal_complement(const Subspace& l) {
  std::vector<Vec6> cand;
  for (int i = 0; i < 6; ++i) {
    Vec6 e{};
    e[i] = 1.0;
    for (const auto& b : l.basis) axpy(-b[i], b, e);
    cand.push_back(e);
  }
  Subspace out;
  const int want = 6 - l.dim();
  std::vector<bool> used(6, false);
  while (out.dim() < want) {
    int pivot = -1;
    double best = -1.0;
    for (int i = 0; i < 6; ++i) {
      if (used[i]) continue;
      const double r = norm(cand[i]);
      if (r > best) {
        best = r;
        pivot = i;
      }
    }
    used[pivot] = true;
    Vec6 q = cand[pivot];
    for (const auto& b : l.basis) axpy(-dot(b, q), b, q);
    for (const auto& b : out.basis) axpy(-dot(b, q), b, q);
    const double qn = norm(q);
    for (double& x : q) x /= qn;
    out.basis.push_back(q);
    for (int i = 0; i < 6; ++i)
      if (!used[i]) axpy(-dot(q, cand[i]), q, cand[i]);
  }
  return out;
}

Vec6 project(const Subspace& l, const Vec6& v) {
  Vec6 p{};
  for (const auto& b : l.basis) axpy(dot(b, v), b, p);
  return p;
}

SymMat3 project(const Subspace& l, const SymMat3& a) { return smat(project(l, svec(a))); }

double distance(const Subspace& l, const Vec6& v) {
  Vec6 r = v;
  const Vec6 p = project(l, v);
  for (int i = 0; i < 6; ++i) r[i] -= p[i];
  return norm(r);
}

double distance(const Subspace& l, const SymMat3& a) { return distance(l, svec(a)); }

Subspace intersect(const Subspace& a, const Subspace& b, double tol) {
  if (a.dim() == 0 || b.dim() == 0) return {};
  if (a.dim() == 6) return b;
  const Subspace a_perp = orthogonal_complement(a);

  Eigen::MatrixXd qb(6, b.dim());
  for (int j = 0; j < b.dim(); ++j)
    for (int i = 0; i < 6; ++i) qb(i, j) = b.basis[j][i];
  Eigen::MatrixXd qp(6, a_perp.dim());
  for (int j = 0; j < a_perp.dim(); ++j)
    for (int i = 0; i < 6; ++i) qp(i, j) = a_perp.basis[j][i];

  // Singular values of Qperp^T Qb are the sines of the principal angles.
  const Eigen::MatrixXd c = qp.transpose() * qb;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const Eigen::MatrixXd& v = svd.matrixV();

  std::vector<Vec6> found;
  for (int j = 0; j < b.dim(); ++j) {
    const double sine = j < sv.size() ? sv(j) : 0.0;
    if (sine > tol) continue;
    const Eigen::VectorXd x = qb * v.col(j);
    Vec6 w{};
    for (int i = 0; i < 6; ++i) w[i] = x(i);
    found.push_back(project(a, w));
  }
  return orthonormal_basis(found, 1e-6);
}

double gram_error(const Subspace& l) {
  double err = 0.0;
  for (int i = 0; i < l.dim(); ++i)
    for (int j = 0; j < l.dim(); ++j)
      err = std::max(err, std::abs(dot(l.basis[i], l.basis[j]) - (i == j ? 1.0 : 0.0)));
  return err;
}

}  // namespace socr
