#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "socr/subspace.hpp"
#include "socr/sym_mat3.hpp"

namespace socr {

/// A maximal-rank element of S = S^3_+ cap L, normalized to trace one.
struct MaxRankWitness {
  SymMat3 a_star{};
  int rank = 0;
  double lambda_min_value = 0;  // lambda_min(a_star)
  std::vector<Vec3> range_basis;  // orthonormal, spans range(a_star)
};

struct SliceDescription {
  Subspace l;
  Subspace span_s;
  int dim_s = 0;
  MaxRankWitness witness;
};

struct FacialReductionOptions {
  int restarts = 16;
  double radius = 1e3;
  double rank_tol = 1e-7;
  /// Sine tolerance when intersecting L with the span of a detected face.
  double face_tol = 1e-6;
  std::uint64_t seed = 0;
};

/// Maximizes lambda_min over the trace-one section of L (multistart barrier
/// method), then restricts to the numerically detected range and re-solves
/// until the rank is certified. Throws kNumericalFailure if restarts disagree.
MaxRankWitness max_rank_element(const Subspace& l, const FacialReductionOptions& opts = {});

/// span(S): L itself when S has interior points, otherwise L cap span(face).
SliceDescription slice_dimension(const Subspace& l, const FacialReductionOptions& opts = {});

/// svec span of {V Y V^T : Y symmetric} for orthonormal V = range.
Subspace face_span(std::span<const Vec3> range);

struct SlicePoint {
  SymMat3 x{};  // unit Frobenius norm
  double psd_residual = 0;       // max(0, -lambda_min(x))
  double subspace_residual = 0;  // dist(x, L)
  int iterations = 0;
};

struct SamplerOptions {
  int max_iterations = 10000;
  double step_tol = 1e-12;
  int restarts_per_sample = 50;
  double accept_tol = 1e-8;
  double zero_tol = 1e-8;
};

/// Alternating projections between S^3_+ and L from Gaussian starts. Limits
/// that collapse to zero or miss accept_tol are restarted; sampling stops at
/// the first index whose restarts all fail, so the result may hold fewer than
/// `count` points. After the first stall the sampler consults facial
/// reduction: it moves into span(S) when L meets the cone only in a proper
/// face, and repairs near misses by a step along the max-rank witness. Throws kSamplingExhausted if every
/// restart collapsed to zero (consistent with S = {0}).
std::vector<SlicePoint> sample_slice_points(const Subspace& l, int count, std::uint64_t seed,
                                            const SamplerOptions& opts = {});

}  // namespace socr
