#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "socr/lift_synthesis.hpp"
#include "socr/subspace.hpp"

namespace socr {

struct VerificationFailure {
  std::string kind;
  std::vector<double> input;  // z for forward checks, svec(X) for backward ones
  double value = 0;
};

struct VerificationReport {
  int samples_forward = 0;
  int samples_backward = 0;
  double max_psd_violation = 0;
  double max_subspace_residual = 0;
  double max_preimage_residual = 0;
  int failure_count = 0;
  std::vector<VerificationFailure> failures;  // first kMaxStoredFailures only
  bool passed = true;
  /// Backward sampler found only the apex (S = {0}).
  bool apex_only = false;

  static constexpr int kMaxStoredFailures = 32;
  void add_failure(VerificationFailure f);
};

/// Combined report; passes iff both pass.
VerificationReport merge(const VerificationReport& a, const VerificationReport& b);

/// Deterministic Q^2 samples. Index 0 is the apex; indices = 5 (mod 10) lie on
/// the boundary of both factors. q2_sample draws each index independently;
/// sample_q2 (and verify_forward) read one sequential stream, which is cheaper.
Q2Point q2_sample(std::uint64_t seed, std::uint64_t index);
std::vector<Q2Point> sample_q2(std::uint64_t seed, int count);

/// Pushes Q^2 samples (projected onto ker E, discarding those that leave
/// Q^2) through G and checks lambda_min >= -tol and
/// dist(X, L) <= tol * max(1, |X|).
VerificationReport verify_forward(const LiftCertificate& cert, const Subspace& l, int count,
                                  std::uint64_t seed, double tol);

/// Draws slice points with the alternating-projection sampler and requires a
/// preimage with residual <= tol for each.
VerificationReport verify_backward(const LiftCertificate& cert, const Subspace& l, int count,
                                   std::uint64_t seed, double tol);

}  // namespace socr
