#include "socr/lift_verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "socr/errors.hpp"
#include "socr/kernels.hpp"
#include "socr/linalg.hpp"
#include "socr/random.hpp"
#include "socr/slice_geometry.hpp"

namespace socr {

void VerificationReport::add_failure(VerificationFailure f) {
  ++failure_count;
  passed = false;
  if (static_cast<int>(failures.size()) < kMaxStoredFailures) failures.push_back(std::move(f));
}

VerificationReport merge(const VerificationReport& a, const VerificationReport& b) {
  VerificationReport r;
  r.samples_forward = a.samples_forward + b.samples_forward;
  r.samples_backward = a.samples_backward + b.samples_backward;
  r.max_psd_violation = std::max(a.max_psd_violation, b.max_psd_violation);
  r.max_subspace_residual = std::max(a.max_subspace_residual, b.max_subspace_residual);
  r.max_preimage_residual = std::max(a.max_preimage_residual, b.max_preimage_residual);
  r.failure_count = a.failure_count + b.failure_count;
  for (const auto* src : {&a, &b})
    for (const auto& f : src->failures)
      if (static_cast<int>(r.failures.size()) < VerificationReport::kMaxStoredFailures)
        r.failures.push_back(f);
  r.passed = a.passed && b.passed;
  r.apex_only = a.apex_only || b.apex_only;
  return r;
}

namespace {

template <class Rng>
Q2Point draw_q2(Rng& rng, bool boundary) {
  std::normal_distribution<double> n01;
  Q2Point z;
  for (int k = 0; k < 2; ++k) {
    const double g1 = n01(rng), g2 = n01(rng), g3 = n01(rng);
    // Both ways of evaluating the norm must see the point inside the cone.
    const double rho = std::max(std::hypot(g1, g2), std::sqrt(g1 * g1 + g2 * g2));
    z[3 * k] = g1;
    z[3 * k + 1] = g2;
    z[3 * k + 2] = boundary ? rho : rho * (1.0 + std::abs(g3));
  }
  return z;
}

// Sequential stream: apex first, then every tenth draw on the boundary.
class Q2Stream {
 public:
  explicit Q2Stream(std::uint64_t seed) : rng_(derived_rng(seed, 0, 0x9203)) {}
  Q2Point next() {
    const std::uint64_t i = index_++;
    if (i == 0) return Q2Point{};
    return draw_q2(rng_, i % 10 == 5);
  }

 private:
  std::mt19937_64 rng_;
  std::uint64_t index_ = 0;
};

}  // namespace

Q2Point q2_sample(std::uint64_t seed, std::uint64_t index) {
  if (index == 0) return Q2Point{};
  auto rng = derived_rng(seed, index, 0x9202);
  return draw_q2(rng, index % 10 == 5);
}

std::vector<Q2Point> sample_q2(std::uint64_t seed, int count) {
  std::vector<Q2Point> out;
  out.reserve(std::max(count, 0));
  Q2Stream stream(seed);
  for (int i = 0; i < count; ++i) out.push_back(stream.next());
  return out;
}

namespace {

// Orthogonal projector onto ker E.
Eigen::Matrix<double, 6, 6> kernel_projector(const std::vector<Vec6>& e) {
  Eigen::Matrix<double, 6, 6> p = Eigen::Matrix<double, 6, 6>::Identity();
  if (e.empty()) return p;
  Eigen::MatrixXd em(e.size(), 6);
  for (size_t i = 0; i < e.size(); ++i)
    for (int j = 0; j < 6; ++j) em(i, j) = e[i][j];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(em, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cut = 1e-10 * std::max(1.0, sv.size() ? sv(0) : 0.0);
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) <= cut) break;
    const Eigen::VectorXd v = svd.matrixV().col(i);
    p -= v * v.transpose();
  }
  return p;
}

}  // namespace

VerificationReport verify_forward(const LiftCertificate& cert, const Subspace& l, int count,
                                  std::uint64_t seed, double tol) {
  VerificationReport rep;
  if (count < 1) return rep;

  const auto proj = kernel_projector(cert.e);
  const bool has_e = !cert.e.empty();

  // Accepted samples in structure-of-arrays layout (6 x n).
  const std::size_t n = static_cast<std::size_t>(count);
  std::vector<double> z(6 * n), x(6 * n);
  std::size_t have = 0;
  const std::uint64_t max_draws = 100 * static_cast<std::uint64_t>(count) + 10;
  Q2Stream stream(seed);
  for (std::uint64_t idx = 0; idx < max_draws && have < n; ++idx) {
    Q2Point s = stream.next();
    if (has_e) {
      Eigen::Map<Eigen::Matrix<double, 6, 1>> sv(s.data());
      const Eigen::Matrix<double, 6, 1> projected = proj * sv;
      for (int i = 0; i < 6; ++i) s[i] = projected(i);
      if (q2_margin(s) < -1e-12 * std::max(1.0, norm(s))) continue;
    }
    for (int i = 0; i < 6; ++i) z[i * n + have] = s[i];
    ++have;
  }

  // Compact to a dense block of `have` columns.
  if (have < n) {
    std::vector<double> zp(6 * have);
    for (int i = 0; i < 6; ++i) std::copy_n(z.begin() + i * n, have, zp.begin() + i * have);
    z.swap(zp);
    x.assign(6 * have, 0.0);
  }
  std::vector<double> g(36);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) g[i * 6 + j] = cert.g[i][j];
  kernels::affine_map(6, 6, g, {}, z, x, have);

  const Subspace perp = orthogonal_complement(l);
  std::vector<double> q(6 * perp.dim());
  for (int r = 0; r < perp.dim(); ++r)
    for (int i = 0; i < 6; ++i) q[6 * r + i] = perp.basis[r][i];
  std::vector<double> dist(have);
  kernels::complement_norm(perp.dim(), q, x, dist, have);

  rep.samples_forward = static_cast<int>(have);
  for (std::size_t j = 0; j < have; ++j) {
    Vec6 xs, zs;
    for (int i = 0; i < 6; ++i) {
      xs[i] = x[i * have + j];
      zs[i] = z[i * have + j];
    }
    const SymMat3 xm = smat(xs);
    const double viol = std::max(0.0, -lambda_min(xm));
    const double rel = dist[j] / std::max(1.0, xm.norm());
    rep.max_psd_violation = std::max(rep.max_psd_violation, viol);
    rep.max_subspace_residual = std::max(rep.max_subspace_residual, rel);
    if (viol > tol)
      rep.add_failure({"not_psd", std::vector<double>(zs.begin(), zs.end()), -viol});
    if (rel > tol)
      rep.add_failure({"outside_subspace", std::vector<double>(zs.begin(), zs.end()), rel});
  }
  if (have == 0) rep.add_failure({"no_forward_samples", {}, 0});
  return rep;
}

VerificationReport verify_backward(const LiftCertificate& cert, const Subspace& l, int count,
                                   std::uint64_t seed, double tol) {
  VerificationReport rep;
  if (count < 1) return rep;
  std::vector<SlicePoint> points;
  try {
    points = sample_slice_points(l, count, seed);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::kSamplingExhausted) throw;
    rep.apex_only = true;
    return rep;
  }
  if (points.empty()) {
    rep.add_failure({"no_converged_slice_samples", {}, 0});
    return rep;
  }
  for (const SlicePoint& p : points) {
    const Vec6 sx = svec(p.x);
    ++rep.samples_backward;
    try {
      const Preimage pre = preimage(cert, p.x, tol);
      rep.max_preimage_residual = std::max(rep.max_preimage_residual, pre.residual);
      if (pre.residual > tol)
        rep.add_failure({"preimage_residual", std::vector<double>(sx.begin(), sx.end()),
                         pre.residual});
    } catch (const Error& err) {
      rep.add_failure({std::string(to_string(err.code())),
                       std::vector<double>(sx.begin(), sx.end()), 0});
    }
  }
  return rep;
}

}  // namespace socr
