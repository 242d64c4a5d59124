#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "socr/classifier.hpp"
#include "socr/lift_synthesis.hpp"
#include "socr/subspace.hpp"
#include "socr/sym_mat3.hpp"

namespace socr {

/// A(x) + B psd with A(x) = sum_i x_i A_i.
struct LMI {
  std::vector<SymMat3> a;
  SymMat3 b{};

  int n() const { return static_cast<int>(a.size()); }
  SymMat3 eval(const std::vector<double>& x) const;
};

/// The 3x3 correlation matrices: x = (a12, a13, a23), B = I.
LMI eliptope_lmi();

/// span{svec A_1, ..., svec A_n, svec B}.
Subspace image_subspace(const LMI& lmi);

/// Orthonormal basis (in R^{n+1}) of the kernel of (x, y) -> svec(A(x) + y B).
std::vector<std::vector<double>> lmi_lineality(const LMI& lmi);

/// x is feasible iff some z in Q^2 has H_x x + H_z z = h. The first six rows
/// are G z - A(x) = B in svec coordinates, the rest are E z = 0.
struct AffineSocRep {
  int n = 0;
  std::vector<std::vector<double>> h_x;
  std::vector<Vec6> h_z;
  std::vector<double> h;
  std::string cone = "Q3xQ3";
  LiftCertificate cert;
  Subspace l_prime;
  Verdict verdict;
};

struct Inapplicable {
  Verdict verdict;
  Subspace l_prime;
};

using SocRepResult = std::variant<AffineSocRep, Inapplicable>;

SocRepResult affine_soc_rep(const LMI& lmi, const LiftOptions& opts = {});

/// lambda_min(A(x) + B) >= -tol.
bool lmi_member(const LMI& lmi, const std::vector<double>& x, double tol);

/// (x, y) in the homogenized cone {A(x) + y B psd}.
bool homogeneous_member(const LMI& lmi, const std::vector<double>& x, double y, double tol);

struct SocFeasibility {
  bool feasible = false;
  Q2Point z{};
  double equality_residual = 0;  // |H_x x + H_z z - h| / max(1, |h - H_x x|)
};

/// Decides the existential system using only the data stored in `rep`.
SocFeasibility soc_feasible(const AffineSocRep& rep, const std::vector<double>& x, double tol);

struct AgreementStats {
  int samples = 0;
  int lmi_feasible = 0;
  int agree = 0;
  int disagree_in_band = 0;
  int disagree_outside_band = 0;
  double box = 0;
};

/// Box half-width 1 + |B| / max_i max(|A_i|, 1).
double default_sampling_box(const LMI& lmi);

/// Samples x uniformly in [-box, box]^n and compares lmi_member (tol 1e-8)
/// with soc_feasible. Disagreements where |lambda_min(A(x) + B)| <= band
/// are counted separately.
AgreementStats sample_agreement(const LMI& lmi, const AffineSocRep& rep, int count,
                                std::uint64_t seed, double band = 1e-7,
                                std::optional<double> box = std::nullopt);

}  // namespace socr
