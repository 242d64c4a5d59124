#include <gtest/gtest.h>

#include <algorithm>

#include "socr/errors.hpp"
#include "socr/linalg.hpp"
#include "socr/subspace.hpp"
#include "test_util.hpp"

namespace socr {
namespace {

using testing::charpoly_eigenvalues;

double mat_norm(const Mat3& m) {
  double s = 0;
  for (const auto& r : m)
    for (double x : r) s += x * x;
  return std::sqrt(s);
}

Mat3 sub(const Mat3& a, const Mat3& b) {
  Mat3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c[i][j] = a[i][j] - b[i][j];
  return c;
}

// M^T D M
SymMat3 reconstruct(const CongruenceFactor& f) { return congruence(transpose(f.m), f.d); }

TEST(Svec, Examples) {
  const Vec6 si = svec(SymMat3::identity());
  EXPECT_EQ(si, (Vec6{1, 1, 1, 0, 0, 0}));
  EXPECT_DOUBLE_EQ(dot(si, si), 3.0);

  const SymMat3 a{0, 0, 0, 1, 0, 0};
  const Vec6 sa = svec(a);
  EXPECT_DOUBLE_EQ(sa[3], std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(dot(sa, sa), 2.0);
  EXPECT_DOUBLE_EQ(trace_inner(a, a), 2.0);

  EXPECT_DOUBLE_EQ(dot(svec(SymMat3::diag(1, -1, 0)), si), 0.0);
}

TEST(Svec, IsometryAndRoundTrip) {
  for (int k = 0; k < 2000; ++k) {
    auto rng = derived_rng(11, k);
    const SymMat3 a = gaussian_sym(rng), b = gaussian_sym(rng);
    // tr(AB) from full products, independent of svec.
    const Mat3 ab = matmul(a.full(), b.full());
    const double tr = ab[0][0] + ab[1][1] + ab[2][2];
    EXPECT_LE(std::abs(dot(svec(a), svec(b)) - tr), 1e-13 * a.norm() * b.norm());
    const SymMat3 back = smat(svec(a));
    EXPECT_LE((back - a).norm(), 1e-15 * a.norm());
  }
}

TEST(SymMat3, FromFullRejectsAsymmetry) {
  Mat3 m = {{{1, 2, 3}, {2, 4, 5}, {3, 5, 6}}};
  EXPECT_NO_THROW(SymMat3::from_full(m));
  m[0][1] += 1e-9;
  try {
    SymMat3::from_full(m);
    FAIL() << "asymmetric input accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidInput);
  }
  m[0][1] = 2 + 1e-13;  // within 1e-12 * 6
  EXPECT_NO_THROW(SymMat3::from_full(m));
}

TEST(Eigen, Examples) {
  const auto e1 = eigen_sym3(SymMat3::identity());
  for (double v : e1.values) EXPECT_NEAR(v, 1.0, 1e-15);

  const auto e2 = eigen_sym3(SymMat3::diag(1, -1, 0));
  EXPECT_NEAR(e2.values[0], -1.0, 1e-15);
  EXPECT_NEAR(e2.values[1], 0.0, 1e-15);
  EXPECT_NEAR(e2.values[2], 1.0, 1e-15);

  // (1 - l)(l^2 - 1/4)
  const SymMat3 b3{0, 1, 0, 0, -0.5, 0};
  const auto e3 = eigen_sym3(b3);
  const auto oracle = charpoly_eigenvalues(b3);
  const double expect[3] = {-0.5, 0.5, 1.0};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(e3.values[i], expect[i], 1e-14);
    EXPECT_NEAR(oracle[i], expect[i], 1e-14);
  }
}

// Residuals, orthogonality, ordering, trace and determinant on random input,
// including near-repeated spectra.
TEST(Eigen, RandomProperties) {
  for (int k = 0; k < 100000; ++k) {
    auto rng = derived_rng(12, k);
    SymMat3 a = gaussian_sym(rng);
    if (k % 4 == 1) {
      const Mat3 q = eigen_sym3(gaussian_sym(rng)).vectors;
      a = congruence(q, SymMat3::diag(1.0, 1.0 + 1e-9 * (k % 7), -2.0));
    } else if (k % 4 == 2) {
      a = std::pow(10.0, (k % 13) - 6) * a;
    }
    const EigenTriple e = eigen_sym3(a);
    const double scale = std::max(1.0, a.norm());
    ASSERT_LE(e.values[0], e.values[1]);
    ASSERT_LE(e.values[1], e.values[2]);
    for (int i = 0; i < 3; ++i) {
      const Vec3 u = e.vector(i);
      const Vec3 au = matvec(a.full(), u);
      double r = 0;
      for (int j = 0; j < 3; ++j) r += (au[j] - e.values[i] * u[j]) * (au[j] - e.values[i] * u[j]);
      ASSERT_LE(std::sqrt(r), 1e-10 * scale) << k;
    }
    const Mat3 qtq = matmul(transpose(e.vectors), e.vectors);
    ASSERT_LE(mat_norm(sub(qtq, mat3_identity())), 1e-12) << k;
    ASSERT_NEAR(e.values[0] + e.values[1] + e.values[2], a.trace(), 1e-10 * scale);
    if (k % 4 == 0) {
      // Well conditioned Gaussian draws: determinant check, relative.
      const double prod = e.values[0] * e.values[1] * e.values[2];
      const double d = a.det();
      if (std::abs(d) > 1e-3 * std::pow(a.norm(), 3))
        ASSERT_LE(std::abs(prod - d), 1e-8 * std::abs(d)) << k;
      const auto oracle = charpoly_eigenvalues(a);
      for (int i = 0; i < 3; ++i) ASSERT_NEAR(e.values[i], oracle[i], 1e-9 * scale);
    }
  }
}

TEST(Eigen, Deterministic) {
  auto rng = derived_rng(13, 0);
  const SymMat3 a = gaussian_sym(rng);
  const EigenTriple x = eigen_sym3(a), y = eigen_sym3(a);
  EXPECT_EQ(x.values, y.values);
  EXPECT_EQ(x.vectors, y.vectors);
}

TEST(Inertia, Examples) {
  EXPECT_EQ(inertia(SymMat3::identity()), (Inertia{3, 0, 0}));
  EXPECT_EQ(inertia(SymMat3::diag(1, -1, 0)), (Inertia{1, 1, 1}));
  EXPECT_EQ(inertia(SymMat3{0, 1, 0, 0, -0.5, 0}), (Inertia{2, 1, 0}));
  const Inertia z = inertia(SymMat3{});
  EXPECT_EQ(z.n_zero, 3);
}

TEST(Inertia, SylvesterInvariance) {
  for (int k = 0; k < 10000; ++k) {
    auto rng = derived_rng(14, k);
    SymMat3 b = k % 2 ? testing::random_singular_indefinite(rng) : gaussian_sym(rng);
    const Mat3 r = gaussian_mat3(rng);
    // Keep R well conditioned and skip B with an eigenvalue near the zero
    // threshold; there the count is decided by rounding, not by Sylvester.
    const auto er = eigen_sym3(congruence(transpose(r), SymMat3::identity())).values;
    if (!(er[2] < 1e3 * er[0])) continue;
    const auto eb = eigen_sym3(b).values;
    bool ambiguous = false;
    for (double l : eb)
      ambiguous = ambiguous || (std::abs(l) > 1e-12 * b.norm() && std::abs(l) < 1e-4 * b.norm());
    if (ambiguous) continue;
    const SymMat3 moved = congruence(transpose(r), b);  // R^T B R
    const Inertia a = inertia(b);
    const Inertia c = inertia(moved);
    ASSERT_EQ(a.n_plus + a.n_minus + a.n_zero, 3);
    ASSERT_EQ(a, c) << k;
  }
}

TEST(Congruence, Examples) {
  const CongruenceFactor f = congruence_factor(SymMat3::diag(2, -3, 0));
  EXPECT_EQ(f.d.a11, 1.0);
  EXPECT_EQ(f.d.a22, -1.0);
  EXPECT_EQ(f.d.a33, 0.0);
  EXPECT_LE((reconstruct(f) - SymMat3::diag(2, -3, 0)).norm(), 1e-14);
  EXPECT_NEAR(std::abs(f.m[0][0]), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(f.m[1][1]), std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(std::abs(f.m[2][2]), 1.0, 1e-15);

  const CongruenceFactor fi = congruence_factor(SymMat3::identity());
  EXPECT_EQ(fi.d.a11 + fi.d.a22 + fi.d.a33, 3.0);
  EXPECT_LE(mat_norm(sub(matmul(transpose(fi.m), fi.m), mat3_identity())), 1e-14);

  const CongruenceFactor f0 = congruence_factor(SymMat3{});
  EXPECT_EQ(f0.d.norm(), 0.0);
  EXPECT_LE(mat_norm(sub(f0.m, mat3_identity())), 0.0);
}

TEST(Congruence, RandomReconstruction) {
  for (int k = 0; k < 10000; ++k) {
    auto rng = derived_rng(15, k);
    SymMat3 b;
    if (k % 3 == 0) {
      std::normal_distribution<double> n01;
      const Mat3 m = gaussian_mat3(rng);
      b = congruence(transpose(m), SymMat3::diag(n01(rng), n01(rng), 0.0));
    } else {
      b = gaussian_sym(rng);
    }
    const CongruenceFactor f = congruence_factor(b);
    ASSERT_LE((reconstruct(f) - b).norm(), 1e-8 * std::max(1.0, b.norm())) << k;
    ASSERT_GE(std::abs(det(f.m)), 1e-10);
    const Inertia in = inertia(b);
    int np = 0, nm = 0, nz = 0;
    for (double d : {f.d.a11, f.d.a22, f.d.a33}) {
      ASSERT_TRUE(d == 1.0 || d == -1.0 || d == 0.0);
      np += d == 1.0;
      nm += d == -1.0;
      nz += d == 0.0;
    }
    ASSERT_EQ(np, in.n_plus);
    ASSERT_EQ(nm, in.n_minus);
    ASSERT_EQ(nz, in.n_zero);
    ASSERT_EQ(f.d.a12, 0.0);
  }
}

TEST(Psd, Examples) {
  EXPECT_TRUE(is_psd(SymMat3::identity(), 0));
  EXPECT_FALSE(is_psd(SymMat3::diag(1, -1, 0), 1e-9));
  EXPECT_LE((psd_project(SymMat3::diag(1, -1, 0)) - SymMat3::diag(1, 0, 0)).norm(), 1e-15);
}

// Nearest psd matrix: no random psd matrix is closer than the projection.
TEST(Psd, ProjectionIsNearest) {
  for (int k = 0; k < 500; ++k) {
    auto rng = derived_rng(16, k);
    const SymMat3 a = gaussian_sym(rng);
    const SymMat3 p = psd_project(a);
    ASSERT_GE(lambda_min(p), -1e-14);
    const double d = (a - p).norm();
    for (int t = 0; t < 20; ++t) {
      const SymMat3 q = testing::random_psd(rng);
      ASSERT_GE((a - q).norm(), d - 1e-12);
    }
  }
}

TEST(Subspace, ComplementOfIdentity) {
  const Vec6 si = svec(SymMat3::identity());
  const Subspace l = orthonormal_basis(std::span<const Vec6>(&si, 1));
  const Subspace perp = orthogonal_complement(l);
  ASSERT_EQ(perp.dim(), 5);
  for (const Vec6& v : perp.basis) EXPECT_NEAR(smat(v).trace(), 0.0, 1e-15);
  EXPECT_LE(gram_error(perp), 1e-12);
}

TEST(Subspace, ComplementOfSliceIsItsNormal) {
  // {a11 = a22} spanned explicitly.
  const std::vector<SymMat3> gens = {SymMat3{1, 1, 0, 0, 0, 0}, SymMat3::diag(0, 0, 1),
                                     SymMat3{0, 0, 0, 1, 0, 0}, SymMat3{0, 0, 0, 0, 1, 0},
                                     SymMat3{0, 0, 0, 0, 0, 1}};
  const Subspace l = orthonormal_basis(gens);
  ASSERT_EQ(l.dim(), 5);
  const Subspace perp = orthogonal_complement(l);
  ASSERT_EQ(perp.dim(), 1);
  const Vec6 n = perp.basis[0];
  const double s = n[0] > 0 ? 1.0 : -1.0;
  const double r = 1 / std::sqrt(2.0);
  const Vec6 expect = {r, -r, 0, 0, 0, 0};
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(s * n[i], expect[i], 1e-15);
}

TEST(Subspace, ProjectionProperties) {
  for (int k = 0; k < 1000; ++k) {
    auto rng = derived_rng(17, k);
    const int d = k % 7;
    const Subspace l = testing::random_subspace(rng, d, false);
    ASSERT_EQ(l.dim(), d);
    ASSERT_LE(gram_error(l), 1e-12);
    ASSERT_EQ(l.dim() + orthogonal_complement(l).dim(), 6);
    const Vec6 v = svec(gaussian_sym(rng)), w = svec(gaussian_sym(rng));
    const Vec6 pv = project(l, v);
    const Vec6 ppv = project(l, pv);
    for (int i = 0; i < 6; ++i) ASSERT_NEAR(pv[i], ppv[i], 1e-13);
    ASSERT_NEAR(dot(pv, w), dot(v, project(l, w)), 1e-12);  // self-adjoint
    if (d > 0) {
      const Vec6 in_l = l.basis[0];
      const Vec6 p = project(l, in_l);
      for (int i = 0; i < 6; ++i) ASSERT_NEAR(p[i], in_l[i], 1e-14);
    }
  }
}

TEST(Subspace, RankDetection) {
  std::vector<SymMat3> gens = {SymMat3{0, 0, 0, 1, 0, 0}, SymMat3{0, 0, 0, 1, 0, 0},
                               SymMat3::identity(), 2.0 * SymMat3::identity()};
  EXPECT_EQ(orthonormal_basis(gens).dim(), 2);
  gens.push_back(SymMat3::identity() + SymMat3{0, 0, 0, 1e-12, 0, 0});
  EXPECT_EQ(orthonormal_basis(gens).dim(), 2);
  EXPECT_EQ(orthonormal_basis(std::vector<SymMat3>{}).dim(), 0);
}

TEST(Subspace, Intersection) {
  const Vec6 e[6] = {{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0},
                     {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1}};
  const Subspace a = orthonormal_basis(std::vector<Vec6>{e[0], e[1], e[2]});
  const Subspace b = orthonormal_basis(std::vector<Vec6>{e[1], e[2], e[3]});
  const Subspace c = intersect(a, b);
  ASSERT_EQ(c.dim(), 2);
  for (const Vec6& v : c.basis) {
    EXPECT_NEAR(v[0], 0, 1e-14);
    EXPECT_NEAR(v[3], 0, 1e-14);
  }
  EXPECT_EQ(intersect(a, orthogonal_complement(a)).dim(), 0);
}

}  // namespace
}  // namespace socr
