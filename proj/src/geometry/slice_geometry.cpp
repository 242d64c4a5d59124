#include "socr/slice_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lambda_min.hpp"
#include "socr/errors.hpp"
#include "socr/linalg.hpp"
#include "socr/random.hpp"

namespace socr {

namespace {

// Projection used inside the alternating-projection loop only. Eigen's
// closed-form 3x3 solver is several times cheaper than the Jacobi sweep, and
// its error only perturbs the iterates; accepted points are judged with
// the accurate lambda_min.
SymMat3 psd_project_direct(const SymMat3& a) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = a(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es;
  es.computeDirect(m);
  const Eigen::Vector3d d = es.eigenvalues().cwiseMax(0.0);
  const Eigen::Matrix3d p = es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
  return SymMat3{p(0, 0), p(1, 1), p(2, 2), p(0, 1), p(0, 2), p(1, 2)};
}

Eigen::MatrixXd restrict_to(const SymMat3& a, std::span<const Vec3> range) {
  const int r = static_cast<int>(range.size());
  Eigen::MatrixXd out(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      double s = 0;
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) s += range[i][p] * a(p, q) * range[j][q];
      out(i, j) = s;
    }
  return out;
}

std::vector<Vec3> standard_range() { return {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}; }

MaxRankWitness zero_witness() { return {}; }

// Witness for a certified element; range read off its spectrum.
MaxRankWitness make_witness(const SymMat3& a, double rank_tol) {
  MaxRankWitness w;
  w.a_star = a;
  const EigenTriple e = eigen_sym3(a);
  w.lambda_min_value = e.values[0];
  for (int i = 2; i >= 0; --i)
    if (e.values[i] > rank_tol) w.range_basis.push_back(e.vector(i));
  w.rank = static_cast<int>(w.range_basis.size());
  return w;
}

enum class Sign { kNegative, kZero, kPositive };

struct Level {
  MaxRankWitness witness;
  Subspace span;
};

Level reduce(const Subspace& l, const FacialReductionOptions& opts) {
  Subspace k = l;
  std::vector<Vec3> range = standard_range();
  const Vec6 id = svec(SymMat3::identity());

  for (;;) {
    if (range.empty() || k.dim() == 0) return {zero_witness(), {}};

    // Trace-one section A0 + span(dirs) of k.
    const Vec6 c = project(k, id);
    const double c2 = dot(c, c);
    if (c2 <= 3e-20) return {zero_witness(), {}};
    Vec6 a0 = c;
    for (double& x : a0) x /= c2;
    std::vector<Vec6> dirs_raw;
    for (const Vec6& b : k.basis) {
      Vec6 d = b;
      const double s = dot(b, c) / c2;
      for (int i = 0; i < 6; ++i) d[i] -= s * c[i];
      // The basis is orthonormal, so anything this small is roundoff from
      // removing the trace direction.
      if (norm(d) > 1e-8) dirs_raw.push_back(d);
    }
    const Subspace dirs = orthonormal_basis(dirs_raw, 1e-8);

    detail::Pencil pencil;
    pencil.f0 = restrict_to(smat(a0), range);
    for (const Vec6& d : dirs.basis) pencil.f.push_back(restrict_to(smat(d), range));

    auto rng = derived_rng(opts.seed, static_cast<std::uint64_t>(range.size()), 0x5eed);
    std::normal_distribution<double> n01;
    double best_value = -std::numeric_limits<double>::infinity();
    SymMat3 best{};
    int signs[3] = {0, 0, 0};
    for (int r = 0; r < std::max(1, opts.restarts); ++r) {
      detail::SmallVec y0 = detail::SmallVec::Zero(pencil.params());
      if (r > 0)
        for (int i = 0; i < y0.size(); ++i) y0(i) = n01(rng);
      const auto sol = detail::maximize_lambda_min(pencil, y0, opts.radius);
      const Sign sign = sol.value > opts.rank_tol    ? Sign::kPositive
                        : sol.value < -opts.rank_tol ? Sign::kNegative
                                                     : Sign::kZero;
      ++signs[static_cast<int>(sign)];
      if (sol.value > best_value) {
        best_value = sol.value;
        Vec6 a = a0;
        for (int i = 0; i < dirs.dim(); ++i)
          for (int j = 0; j < 6; ++j) a[j] += sol.y(i) * dirs.basis[i][j];
        best = smat(a);
      }
    }
    const int kinds = (signs[0] > 0) + (signs[1] > 0) + (signs[2] > 0);
    if (kinds > 1) {
      std::ostringstream os;
      os << "restarts disagree on the sign of max lambda_min (neg/zero/pos = " << signs[0] << "/"
         << signs[1] << "/" << signs[2] << ")";
      throw Error(ErrorCode::kNumericalFailure, os.str());
    }

    if (best_value > opts.rank_tol) {
      MaxRankWitness w = make_witness(best, opts.rank_tol);
      if (w.rank != static_cast<int>(range.size()))
        throw Error(ErrorCode::kNumericalFailure, "certified element has unexpected rank");
      return {w, k};
    }
    if (best_value < -opts.rank_tol) return {zero_witness(), {}};

    // Boundary optimum: keep the directions where the maximizer is clearly
    // positive and re-solve inside that face.
    const Eigen::MatrixXd restricted = restrict_to(best, range);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(restricted);
    std::vector<Vec3> next;
    for (int i = static_cast<int>(range.size()) - 1; i >= 0; --i) {
      if (es.eigenvalues()(i) <= opts.rank_tol) continue;
      Vec3 v{0, 0, 0};
      for (size_t j = 0; j < range.size(); ++j)
        for (int p = 0; p < 3; ++p) v[p] += es.eigenvectors()(j, i) * range[j][p];
      next.push_back(v);
    }
    if (next.size() >= range.size())
      throw Error(ErrorCode::kNumericalFailure, "facial reduction made no progress");
    range = std::move(next);
    k = range.empty() ? Subspace{} : intersect(l, face_span(range), opts.face_tol);
  }
}

}  // namespace

Subspace face_span(std::span<const Vec3> range) {
  std::vector<SymMat3> gens;
  for (size_t i = 0; i < range.size(); ++i) {
    gens.push_back(SymMat3::outer(range[i]));
    for (size_t j = i + 1; j < range.size(); ++j) {
      const Vec3& u = range[i];
      const Vec3& v = range[j];
      gens.push_back({2 * u[0] * v[0], 2 * u[1] * v[1], 2 * u[2] * v[2], u[0] * v[1] + u[1] * v[0],
                      u[0] * v[2] + u[2] * v[0], u[1] * v[2] + u[2] * v[1]});
    }
  }
  return orthonormal_basis(gens);
}

MaxRankWitness max_rank_element(const Subspace& l, const FacialReductionOptions& opts) {
  return reduce(l, opts).witness;
}

SliceDescription slice_dimension(const Subspace& l, const FacialReductionOptions& opts) {
  Level level = reduce(l, opts);
  SliceDescription d;
  d.l = l;
  d.witness = std::move(level.witness);
  if (d.witness.rank == 3) d.span_s = l;
  else if (d.witness.rank > 0) d.span_s = std::move(level.span);
  d.dim_s = d.span_s.dim();
  return d;
}

std::vector<SlicePoint> sample_slice_points(const Subspace& l, int count, std::uint64_t seed,
                                            const SamplerOptions& opts) {
  if (count < 1) throw Error(ErrorCode::kInvalidInput, "sample count must be positive");
  std::vector<SlicePoint> out;
  int collapsed = 0;
  int attempts = 0;
  // Where L only touches a face of the cone, plain alternating projections
  // converge sublinearly and never reach accept_tol. After the first stall we
  // move into span(S), where S has relative interior and convergence is linear.
  // Accepted points are still judged against L itself.
  Subspace target = l;
  bool reduced = false;
  SymMat3 witness{};
  double witness_floor = 0;  // smallest nonzero eigenvalue of the witness
  // Until facial reduction has been consulted, a run that needs more than
  // 1000 steps is treated as stalled.
  int max_iterations = std::min(opts.max_iterations, 1000);
  for (int i = 0; i < count; ++i) {
    auto rng = derived_rng(seed, static_cast<std::uint64_t>(i), 0xa11e);
    bool found = false;
    for (int restart = 0; restart < opts.restarts_per_sample && !found; ++restart) {
      ++attempts;
      SymMat3 x = project(target, gaussian_sym(rng));
      int it = 0;
      bool zero = false;
      for (; it < max_iterations; ++it) {
        const double xn = x.norm();
        if (xn < opts.zero_tol) {
          zero = true;
          break;
        }
        const SymMat3 y = psd_project_direct(x);
        // |y - x| is the negative part; once it is below step_tol the next
        // step would be too.
        if ((y - x).norm() <= opts.step_tol * xn) break;
        const SymMat3 next = project(target, y);
        const double step = (next - x).norm();
        x = next;
        if (step <= opts.step_tol * xn) break;
      }
      if (zero || x.norm() < opts.zero_tol) {
        ++collapsed;
        continue;
      }
      auto judge = [&](SymMat3 v) {
        v *= 1.0 / v.norm();
        SlicePoint p;
        p.x = v;
        p.psd_residual = std::max(0.0, -lambda_min(v));
        p.subspace_residual = distance(l, v);
        p.iterations = it;
        return p;
      };
      SlicePoint p = judge(x);
      auto rejected = [&](const SlicePoint& q) {
        return q.psd_residual > opts.accept_tol || q.subspace_residual > opts.accept_tol;
      };
      if (rejected(p) && !reduced) {
        reduced = true;
        max_iterations = opts.max_iterations;
        try {
          const SliceDescription desc = slice_dimension(l);
          if (desc.dim_s == 0) {
            // L only grazes the cone; this start was creeping toward the apex.
            target = Subspace::zero();
            ++collapsed;
            continue;
          }
          if (desc.dim_s < l.dim()) {
            // Snap the span back into L so accepted points stay on the slice.
            std::vector<Vec6> in_l;
            for (const Vec6& v : desc.span_s.basis) in_l.push_back(project(l, v));
            target = orthonormal_basis(in_l);
          }
          const auto ev = eigen_sym3(desc.witness.a_star).values;
          witness = desc.witness.a_star;
          witness_floor = ev[3 - desc.witness.rank];
          // With the repair step available, long stalled runs buy nothing.
          max_iterations = std::min(max_iterations, 200);
        } catch (const Error&) {
          // Keep sampling in L; the caller sees fewer points.
        }
      }
      if (rejected(p) && witness_floor > 0) {
        // Thin slices: alternating projections stall a little outside the
        // cone. Moving toward the relative interior along the max-rank
        // witness keeps the point in L and clears the negative part.
        const double lm = lambda_min(p.x);
        if (lm < 0) p = judge(p.x + ((-lm) * (1.0 + 1e-6) / witness_floor) * witness);
      }
      if (rejected(p)) continue;
      out.push_back(p);
      found = true;
    }
    // A full round of failed restarts means further indices would fail the
    // same way (typically S = {0} approached slowly); stop early.
    if (!found) break;
  }
  if (out.empty() && collapsed == attempts)
    throw Error(ErrorCode::kSamplingExhausted, "every start collapsed to the apex");
  return out;
}

}  // namespace socr
