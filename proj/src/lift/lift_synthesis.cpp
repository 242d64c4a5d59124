#include "socr/lift_synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "socr/errors.hpp"
#include "socr/lift_verify.hpp"
#include "socr/linalg.hpp"

namespace socr {

double q2_margin(const Q2Point& z) {
  const double mw = z[2] - std::sqrt(z[0] * z[0] + z[1] * z[1]);
  const double mv = z[5] - std::sqrt(z[3] * z[3] + z[4] * z[4]);
  return std::min(mw, mv);
}

bool in_q2(const Q2Point& z, double tol) { return q2_margin(z) >= -tol; }

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::kCanonical: return "Canonical";
    case Provenance::kCongruenceConjugated: return "CongruenceConjugated";
    case Provenance::kFaceEmbedding: return "FaceEmbedding";
    case Provenance::kSlicedCongruence: return "SlicedCongruence";
  }
  return "Unknown";
}

std::optional<Provenance> provenance_from_string(std::string_view s) {
  for (Provenance p : {Provenance::kCanonical, Provenance::kCongruenceConjugated,
                       Provenance::kFaceEmbedding, Provenance::kSlicedCongruence})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

Vec6 LiftCertificate::apply(const Q2Point& z) const {
  Vec6 out{};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) out[i] += g[i][j] * z[j];
  return out;
}

int LiftCertificate::e_rank() const { return static_cast<int>(compress_rows(e).size()); }

std::vector<Vec6> compress_rows(const std::vector<Vec6>& rows, double rel_tol) {
  std::vector<Vec6> kept;
  for (const Vec6& r : rows)
    if (norm(r) > 1e-14) kept.push_back(r);
  return orthonormal_basis(kept, rel_tol).basis;
}

namespace {

// Columns of G in svec coordinates for the matrices attached to each z entry.
Mat6 from_columns(const std::array<SymMat3, 6>& cols) {
  Mat6 g{};
  for (int j = 0; j < 6; ++j) {
    const Vec6 c = svec(cols[j]);
    for (int i = 0; i < 6; ++i) g[i][j] = c[i];
  }
  return g;
}

SymMat3 column(const Mat6& g, int j) {
  Vec6 c;
  for (int i = 0; i < 6; ++i) c[i] = g[i][j];
  return smat(c);
}

double max_abs(const Mat6& g) {
  double m = 0;
  for (const auto& row : g)
    for (double x : row) m = std::max(m, std::abs(x));
  return m;
}

// Rows <N, smat(G z)> = 0 for each N in `normals`.
std::vector<Vec6> membership_rows(const Mat6& g, const Subspace& normals) {
  std::vector<Vec6> rows;
  const double floor = 1e-10 * std::max(1.0, max_abs(g));
  for (const Vec6& n : normals.basis) {
    Vec6 r{};
    for (int j = 0; j < 6; ++j)
      for (int i = 0; i < 6; ++i) r[j] += n[i] * g[i][j];
    if (norm(r) > floor) rows.push_back(r);
  }
  return rows;
}

Vec6 unit(int i) {
  Vec6 e{};
  e[i] = 1.0;
  return e;
}

Preimage canonical_preimage(const SymMat3& a, double tol) {
  const double scale = std::max(1.0, a.norm());
  const double abs_tol = tol * scale;
  if (std::abs(a.a11 - a.a22) > abs_tol) {
    std::ostringstream os;
    os << "a11 - a22 = " << a.a11 - a.a22 << " exceeds " << abs_tol;
    throw Error(ErrorCode::kNotInSlice, os.str());
  }
  const double t = 0.5 * (a.a11 + a.a22);
  const double b = a.a13, c = a.a23, s = a.a33;
  const double p = t + a.a12;  // quadratic form at (1, 1, 0)
  const double m = t - a.a12;  // quadratic form at (1, -1, 0)
  if (p < -abs_tol || m < -abs_tol)
    throw Error(ErrorCode::kEmptyInterval, "matrix is not psd on the (1, +-1, 0) directions");

  const double root_tol = std::sqrt(tol) * scale;
  // The Lorentz margins of the two halves are the smallest eigenvalues of
  // [[p, b+c], [b+c, u]] / 2 and [[m, b-c], [b-c, 2s-u]] / 2.
  auto lmin2 = [](double d1, double off, double d2) {
    return 0.5 * (d1 + d2) - std::hypot(0.5 * (d1 - d2), off);
  };
  auto margin_x = [&](double u) { return 0.5 * lmin2(p, b + c, u); };
  auto margin_y = [&](double u) { return 0.5 * lmin2(m, b - c, 2.0 * s - u); };

  // Pivots below `cut` are treated as zero. The exact formula is tried first
  // so a small but resolved pivot keeps its constraint on u.
  auto interval = [&](double cut, Preimage& out) {
    if (p > cut) {
      out.u_lo = (b + c) * (b + c) / p;
    } else {
      if (std::abs(b + c) > root_tol)
        throw Error(ErrorCode::kEmptyInterval, "t + a vanishes but b + c does not");
      out.u_lo = 0.0;
    }
    if (m > cut) {
      out.u_hi = 2.0 * s - (b - c) * (b - c) / m;
    } else {
      if (std::abs(b - c) > root_tol)
        throw Error(ErrorCode::kEmptyInterval, "t - a vanishes but b - c does not");
      out.u_hi = 2.0 * s;
    }
    if (out.u_hi >= out.u_lo) {
      out.u = 0.5 * (out.u_lo + out.u_hi);
      return true;
    }
    // Crossed interval, which happens when A is psd only up to roundoff.
    // margin_x increases and margin_y decreases in u, so the u that
    // maximizes the smaller margin is where they meet.
    double lo = out.u_hi, hi = out.u_lo;
    for (int i = 0; i < 200 && hi - lo > 1e-16 * std::max(1.0, std::abs(hi)); ++i) {
      const double mid = 0.5 * (lo + hi);
      (margin_x(mid) < margin_y(mid) ? lo : hi) = mid;
    }
    out.u = 0.5 * (lo + hi);
    return std::min(margin_x(out.u), margin_y(out.u)) >= -abs_tol;
  };
  Preimage out;
  const double tiny = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  if (!interval(tiny, out) && !interval(abs_tol, out)) {
    std::ostringstream os;
    os << "empty interval [" << out.u_lo << ", " << out.u_hi << "]";
    throw Error(ErrorCode::kEmptyInterval, os.str());
  }

  // Rotated-cone triples x, y with x2 x3 >= x1^2, then Lorentz coordinates.
  // p and m are not clamped: a slightly negative pivot shows up in the cone
  // margin, while G z still reproduces A exactly.
  const double x1 = 0.5 * (b + c), x2 = 0.5 * p, x3 = 0.5 * out.u;
  const double y1 = 0.5 * (b - c), y2 = 0.5 * m, y3 = s - 0.5 * out.u;
  out.z = {0.5 * (x3 - x2), x1, 0.5 * (x2 + x3), 0.5 * (y3 - y2), y1, 0.5 * (y2 + y3)};
  return out;
}

Preimage face_preimage(const LiftCertificate& cert, const SymMat3& a, double tol) {
  const double scale = std::max(1.0, a.norm());
  const auto& v = cert.range_basis;
  Preimage out;
  auto quad = [&](const Vec3& x, const Vec3& y) {
    double s = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s += x[i] * a(i, j) * y[j];
    return s;
  };
  if (v.size() == 2) {
    const double y11 = quad(v[0], v[0]), y22 = quad(v[1], v[1]), y12 = quad(v[0], v[1]);
    out.z = {0.5 * (y22 - y11), y12, 0.5 * (y11 + y22), 0, 0, 0};
  } else if (v.size() == 1) {
    out.z = {0, 0, quad(v[0], v[0]), 0, 0, 0};
  }
  const Vec6 back = cert.apply(out.z);
  const Vec6 sa = svec(a);
  double r2 = 0;
  for (int i = 0; i < 6; ++i) r2 += (back[i] - sa[i]) * (back[i] - sa[i]);
  if (std::sqrt(r2) > tol * scale)
    throw Error(ErrorCode::kNotInSlice, "matrix is not supported on the face");
  return out;
}

}  // namespace

LiftCertificate canonical_lift() {
  // Column order: w1, w2, w3, v1, v2, v3.
  const std::array<SymMat3, 6> cols = {
      SymMat3{-1, -1, 1, -1, 0, 0},  // w1
      SymMat3{0, 0, 0, 0, 1, 1},     // w2
      SymMat3{1, 1, 1, 1, 0, 0},     // w3
      SymMat3{-1, -1, 1, 1, 0, 0},   // v1
      SymMat3{0, 0, 0, 0, 1, -1},    // v2
      SymMat3{1, 1, 1, -1, 0, 0},    // v3
  };
  LiftCertificate cert;
  cert.g = from_columns(cols);
  cert.provenance = Provenance::kCanonical;
  return cert;
}

Preimage preimage(const LiftCertificate& cert, const SymMat3& a, double tol) {
  Preimage out;
  double cone_tol = tol;
  switch (cert.provenance) {
    case Provenance::kCanonical:
      out = canonical_preimage(a, tol);
      break;
    case Provenance::kCongruenceConjugated:
    case Provenance::kSlicedCongruence: {
      if (!cert.conjugation)
        throw Error(ErrorCode::kInvalidInput, "conjugated certificate without its congruence");
      const SymMat3 moved = congruence(*cert.conjugation, a);
      // An error e in A becomes at most |M|^2 e after the congruence.
      double m2 = 0;
      for (const auto& row : *cert.conjugation)
        for (double x : row) m2 += x * x;
      const double moved_tol =
          tol * std::max(1.0, m2) * std::max(1.0, a.norm()) / std::max(1.0, moved.norm());
      out = canonical_preimage(moved, moved_tol);
      cone_tol = moved_tol;
      break;
    }
    case Provenance::kFaceEmbedding:
      out = face_preimage(cert, a, tol);
      break;
  }

  const double scale = std::max(1.0, a.norm());
  const Vec6 back = cert.apply(out.z);
  const Vec6 sa = svec(a);
  double r2 = 0;
  for (int i = 0; i < 6; ++i) r2 += (back[i] - sa[i]) * (back[i] - sa[i]);
  for (const Vec6& row : cert.e) {
    const double ez = dot(row, out.z);
    r2 += ez * ez;
  }
  out.residual = std::sqrt(r2) / scale;
  const double margin = q2_margin(out.z);
  if (margin < -cone_tol * std::max(1.0, norm(out.z))) {
    std::ostringstream os;
    os << "preimage leaves Q^2 (margin " << margin << ")";
    throw Error(ErrorCode::kEmptyInterval, os.str());
  }
  return out;
}

LiftCertificate lift_orthogonal_singular(const SymMat3& b, const ClassifyOptions& opts) {
  const Verdict v = classify_orthogonal(b, opts);
  if (v.reason != Reason::kSingularIndefiniteNormal)
    throw Error(ErrorCode::kNotSingularIndefinite,
                std::string("normal classified as ") + std::string(to_string(v.reason)));

  // Treat the middle eigenvalue as the zero one so D = Diag(1, -1, 0).
  const EigenTriple e = eigen_sym3(b);
  const double zero_tol = std::max(default_zero_tol(b), 2.0 * std::abs(e.values[1]));
  if (!(zero_tol < std::min(-e.values[0], e.values[2])))
    throw Error(ErrorCode::kNotSingularIndefinite, "middle eigenvalue is not separated");
  const CongruenceFactor f = congruence_factor(b, zero_tol);
  if (f.d.a11 != 1.0 || f.d.a22 != -1.0 || f.d.a33 != 0.0)
    throw Error(ErrorCode::kNotSingularIndefinite, "congruence signature is not (1, -1, 0)");

  const Mat3 m_inv = inverse(f.m);
  const LiftCertificate base = canonical_lift();
  std::array<SymMat3, 6> cols;
  for (int j = 0; j < 6; ++j) cols[j] = congruence(m_inv, column(base.g, j));

  LiftCertificate cert;
  cert.g = from_columns(cols);
  cert.provenance = Provenance::kCongruenceConjugated;
  cert.conjugation = f.m;
  return cert;
}

SymMat3 find_singular_complement_unchecked(const Subspace& l) {
  const Subspace perp = orthogonal_complement(l);
  if (perp.dim() < 2)
    throw Error(ErrorCode::kPreconditionViolated, "need dim L <= 4");

  SymMat3 c = smat(perp.basis[0]);
  const SymMat3 c2 = smat(perp.basis[1]);
  auto mid = [](const SymMat3& x) { return eigen_sym3(x).values[1]; };

  auto finish = [](const SymMat3& b) {
    const EigenTriple e = eigen_sym3(b);
    if (std::abs(e.values[1]) > 1e-10)
      throw Error(ErrorCode::kNumericalFailure, "lambda_2 root not resolved");
    if (!(e.values[0] < -1e-8 && e.values[2] > 1e-8))
      throw Error(ErrorCode::kIndefinitenessLost,
                  "singular element of L-perp is semidefinite although L has interior points");
    return b;
  };

  double f0 = mid(c);
  if (std::abs(f0) <= 1e-10) return finish(c);
  if (f0 < 0) c = -c;

  auto path = [&](double theta) { return std::cos(theta) * c + std::sin(theta) * c2; };
  double lo = 0.0, hi = std::numbers::pi;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    const double fm = mid(path(m));
    if (fm == 0.0) {
      lo = hi = m;
      break;
    }
    if (fm > 0) lo = m;
    else hi = m;
  }

  // Newton on lambda_2(theta); d lambda_2 / d theta = u2^T B'(theta) u2.
  double theta = 0.5 * (lo + hi);
  SymMat3 best = path(theta);
  double best_f = std::abs(mid(best));
  for (int it = 0; it < 8 && best_f > 0.0; ++it) {
    const EigenTriple e = eigen_sym3(best);
    const SymMat3 deriv = -std::sin(theta) * c + std::cos(theta) * c2;
    const Vec3 u = e.vector(1);
    const double slope = dot(u, matvec(deriv.full(), u));
    if (slope == 0.0) break;
    const double next = theta - e.values[1] / slope;
    const SymMat3 cand = path(next);
    const double fc = std::abs(mid(cand));
    if (!(fc < best_f)) break;
    theta = next;
    best = cand;
    best_f = fc;
  }
  return finish(best);
}

SymMat3 find_singular_complement(const Subspace& l, const FacialReductionOptions& opts) {
  if (l.dim() > 4) throw Error(ErrorCode::kPreconditionViolated, "need dim L <= 4");
  const MaxRankWitness w = max_rank_element(l, opts);
  if (w.rank != 3)
    throw Error(ErrorCode::kPreconditionViolated,
                "L has no positive definite element; use the face route");
  return find_singular_complement_unchecked(l);
}

LiftCertificate face_lift(const Subspace& l, const MaxRankWitness& witness,
                          const FacialReductionOptions& opts) {
  if (witness.rank >= 3) throw Error(ErrorCode::kRankTooLarge, "witness has full rank");
  LiftCertificate cert;
  cert.provenance = Provenance::kFaceEmbedding;
  cert.range_basis = witness.range_basis;

  if (witness.rank == 0) {
    for (int i = 0; i < 6; ++i) cert.e.push_back(unit(i));
    return cert;
  }
  const auto& v = witness.range_basis;
  std::array<SymMat3, 6> cols{};
  if (witness.rank == 1) {
    cols[2] = SymMat3::outer(v[0]);
    cert.g = from_columns(cols);
    cert.e = {unit(0), unit(1), unit(3), unit(4), unit(5)};
    return cert;
  }

  // rank 2: w -> V [[w3 - w1, w2], [w2, w3 + w1]] V^T, second triple pinned.
  const SymMat3 p1 = SymMat3::outer(v[0]);
  const SymMat3 p2 = SymMat3::outer(v[1]);
  const SymMat3 cross = SymMat3::outer({v[0][0] + v[1][0], v[0][1] + v[1][1], v[0][2] + v[1][2]}) -
                        p1 - p2;
  cols[0] = p2 - p1;
  cols[1] = cross;
  cols[2] = p1 + p2;
  cert.g = from_columns(cols);

  std::vector<Vec6> rows = {unit(3), unit(4), unit(5)};
  const Subspace span_s = intersect(l, face_span(v), opts.face_tol);
  for (const Vec6& r : membership_rows(cert.g, orthogonal_complement(span_s))) rows.push_back(r);
  cert.e = compress_rows(rows);
  return cert;
}

LiftCertificate lift_slice(const Subspace& l, const LiftOptions& opts) {
  return lift_slice(l, classify_slice_detailed(l, opts.classify), opts);
}

LiftCertificate lift_slice(const Subspace& l, const SliceClassification& cls,
                           const LiftOptions& opts) {
  if (!cls.verdict.socr)
    throw Error(ErrorCode::kNotSocr, std::string("slice verdict ") +
                                         std::string(to_string(cls.verdict.reason)));

  const SliceDescription& d = cls.description;
  LiftCertificate cert;
  if (d.dim_s == 5) {
    cert = lift_orthogonal_singular(*cls.verdict.witness_b, opts.classify);
  } else if (d.witness.rank == 3) {
    const SymMat3 b = find_singular_complement_unchecked(l);
    cert = lift_orthogonal_singular(b, opts.classify);
    cert.provenance = Provenance::kSlicedCongruence;
    cert.e = compress_rows(membership_rows(cert.g, orthogonal_complement(l)));
  } else {
    cert = face_lift(l, d.witness, opts.classify.facial);
  }

  if (!opts.self_verify) return cert;
  const VerificationReport fwd =
      verify_forward(cert, l, opts.verify_forward_samples, opts.seed, opts.forward_tol);
  const VerificationReport bwd =
      verify_backward(cert, l, opts.verify_backward_samples, opts.seed, opts.backward_tol);
  if (!fwd.passed || !bwd.passed) {
    std::ostringstream os;
    os << "certificate failed self-verification (forward psd " << fwd.max_psd_violation
       << ", subspace " << fwd.max_subspace_residual << ", backward failures "
       << bwd.failure_count << ")";
    throw Error(ErrorCode::kNumericalFailure, os.str());
  }
  return cert;
}

}  // namespace socr
