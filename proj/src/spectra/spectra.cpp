#include "socr/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "socr/errors.hpp"
#include "socr/linalg.hpp"
#include "socr/random.hpp"

namespace socr {

SymMat3 LMI::eval(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != n())
    throw Error(ErrorCode::kInvalidInput, "x has the wrong length");
  SymMat3 out = b;
  for (int i = 0; i < n(); ++i) out = out + x[i] * a[i];
  return out;
}

LMI eliptope_lmi() {
  LMI lmi;
  lmi.a = {SymMat3{0, 0, 0, 1, 0, 0}, SymMat3{0, 0, 0, 0, 1, 0}, SymMat3{0, 0, 0, 0, 0, 1}};
  lmi.b = SymMat3::identity();
  return lmi;
}

Subspace image_subspace(const LMI& lmi) {
  std::vector<SymMat3> gens = lmi.a;
  gens.push_back(lmi.b);
  return orthonormal_basis(gens);
}

std::vector<std::vector<double>> lmi_lineality(const LMI& lmi) {
  const int k = lmi.n() + 1;
  Eigen::MatrixXd m(6, k);
  for (int j = 0; j < k; ++j) {
    const Vec6 c = svec(j < lmi.n() ? lmi.a[j] : lmi.b);
    for (int i = 0; i < 6; ++i) m(i, j) = c[i];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cut = 1e-10 * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  std::vector<std::vector<double>> basis;
  for (int j = rank; j < k; ++j) {
    std::vector<double> v(k);
    for (int i = 0; i < k; ++i) v[i] = svd.matrixV()(i, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

SocRepResult affine_soc_rep(const LMI& lmi, const LiftOptions& opts) {
  const Subspace l = image_subspace(lmi);
  const Verdict verdict = classify_slice(l, opts.classify);
  if (!verdict.socr) return Inapplicable{verdict, l};

  AffineSocRep rep;
  rep.n = lmi.n();
  rep.cert = lift_slice(l, opts);
  rep.l_prime = l;
  rep.verdict = verdict;

  std::vector<Vec6> a_cols;
  for (const SymMat3& ai : lmi.a) a_cols.push_back(svec(ai));
  const Vec6 sb = svec(lmi.b);
  for (int i = 0; i < 6; ++i) {
    std::vector<double> row(rep.n);
    for (int j = 0; j < rep.n; ++j) row[j] = -a_cols[j][i];
    rep.h_x.push_back(std::move(row));
    rep.h_z.push_back(rep.cert.g[i]);
    rep.h.push_back(sb[i]);
  }
  for (const Vec6& e : rep.cert.e) {
    rep.h_x.emplace_back(rep.n, 0.0);
    rep.h_z.push_back(e);
    rep.h.push_back(0.0);
  }
  return rep;
}

bool lmi_member(const LMI& lmi, const std::vector<double>& x, double tol) {
  return lambda_min(lmi.eval(x)) >= -tol;
}

bool homogeneous_member(const LMI& lmi, const std::vector<double>& x, double y, double tol) {
  if (static_cast<int>(x.size()) != lmi.n())
    throw Error(ErrorCode::kInvalidInput, "x has the wrong length");
  SymMat3 m = y * lmi.b;
  for (int i = 0; i < lmi.n(); ++i) m = m + x[i] * lmi.a[i];
  return lambda_min(m) >= -tol;
}

SocFeasibility soc_feasible(const AffineSocRep& rep, const std::vector<double>& x, double tol) {
  if (static_cast<int>(x.size()) != rep.n)
    throw Error(ErrorCode::kInvalidInput, "x has the wrong length");
  // Right-hand side of the G block: svec(A(x) + B) = h - H_x x.
  Vec6 target;
  for (int i = 0; i < 6; ++i) {
    double s = rep.h[i];
    for (int j = 0; j < rep.n; ++j) s -= rep.h_x[i][j] * x[j];
    target[i] = s;
  }
  const SymMat3 xm = smat(target);

  SocFeasibility out;
  try {
    const Preimage pre = preimage(rep.cert, xm, tol);
    out.z = pre.z;
  } catch (const Error& err) {
    if (err.code() != ErrorCode::kEmptyInterval && err.code() != ErrorCode::kNotInSlice) throw;
    return out;
  }
  double r2 = 0;
  for (size_t i = 0; i < rep.h.size(); ++i) {
    double s = dot(rep.h_z[i], out.z) - rep.h[i];
    for (int j = 0; j < rep.n; ++j) s += rep.h_x[i][j] * x[j];
    r2 += s * s;
  }
  out.equality_residual = std::sqrt(r2) / std::max(1.0, norm(target));
  out.feasible = out.equality_residual <= tol && in_q2(out.z, tol * std::max(1.0, norm(out.z)));
  return out;
}

double default_sampling_box(const LMI& lmi) {
  double denom = 1.0;
  for (const SymMat3& ai : lmi.a) denom = std::max(denom, ai.norm());
  return 1.0 + lmi.b.norm() / denom;
}

AgreementStats sample_agreement(const LMI& lmi, const AffineSocRep& rep, int count,
                                std::uint64_t seed, double band, std::optional<double> box) {
  AgreementStats st;
  st.box = box.value_or(default_sampling_box(lmi));
  for (int k = 0; k < count; ++k) {
    auto rng = derived_rng(seed, static_cast<std::uint64_t>(k), 0x5bec);
    std::uniform_real_distribution<double> u(-st.box, st.box);
    std::vector<double> x(lmi.n());
    for (double& xi : x) xi = u(rng);

    const SymMat3 m = lmi.eval(x);
    const double lmin = lambda_min(m);
    const bool in_lmi = lmin >= -1e-8;
    const bool in_soc = soc_feasible(rep, x, band).feasible;
    ++st.samples;
    if (in_lmi) ++st.lmi_feasible;
    if (in_lmi == in_soc) ++st.agree;
    else if (std::abs(lmin) <= band * std::max(1.0, m.norm())) ++st.disagree_in_band;
    else ++st.disagree_outside_band;
  }
  return st;
}

}  // namespace socr
