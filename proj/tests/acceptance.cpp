// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Runs the full sample counts; expect a few minutes on one core.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "socr/classifier.hpp"
#include "socr/cli.hpp"
#include "socr/errors.hpp"
#include "socr/io.hpp"
#include "socr/kernels.hpp"
#include "socr/lift_synthesis.hpp"
#include "socr/lift_verify.hpp"
#include "socr/linalg.hpp"
#include "socr/spectra.hpp"
#include "test_util.hpp"

namespace socr {
namespace {

using Clock = std::chrono::steady_clock;
using io::json;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome table1() {
  const auto t0 = Clock::now();
  std::ostringstream out, err;
  const int code = cli::run_cli({"examples", "table1"}, out, err);
  const double secs = seconds_since(t0);
  const json j = json::parse(out.str());
  const bool expected[] = {true, false, false};
  bool match = code == 0 && j["table1"].size() == 3;
  std::string got;
  for (int i = 0; match && i < 3; ++i) {
    const bool s = j["table1"][i]["socr"];
    match = match && s == expected[i] && j["table1"][i]["socr_from_subspace"] == expected[i];
    got += s ? "yes " : "no ";
  }
  return {match && secs < 1.0, fmt("verdicts %s(expected yes no no), %.3f s (limit 1 s)", got.c_str(), secs)};
}

Outcome canonical() {
  const auto t0 = Clock::now();
  const LiftCertificate g0 = canonical_lift();
  const Subspace s1 = testing::complement_of(SymMat3::diag(1, -1, 0));
  const VerificationReport fwd = verify_forward(g0, s1, 10000, 0, 1e-10);
  double max_a11_a22 = 0, min_lambda = 0;
  for (int k = 0; k < 10000; ++k) {
    const SymMat3 x = smat(g0.apply(q2_sample(0, k)));
    max_a11_a22 = std::max(max_a11_a22, std::abs(x.a11 - x.a22));
    min_lambda = std::min(min_lambda, testing::charpoly_eigenvalues(x)[0] / std::max(1.0, x.norm()));
  }
  double max_res = 0;
  int failures = 0;
  const Mat3 j = {{{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}};
  for (int k = 0; k < 10000; ++k) {
    auto rng = derived_rng(1, k);
    const SymMat3 p = testing::random_psd(rng);
    const SymMat3 a = 0.5 * (p + congruence(j, p));
    try {
      max_res = std::max(max_res, preimage(g0, a, 1e-9).residual);
    } catch (const Error&) {
      ++failures;
    }
  }
  const double secs = seconds_since(t0);
  const bool ok = fwd.passed && fwd.samples_forward == 10000 && max_a11_a22 == 0.0 &&
                  min_lambda >= -1e-10 && failures == 0 && max_res <= 1e-9 && secs < 10.0;
  return {ok, fmt("forward 10^4: min lambda %.2e (>= -1e-10), max|a11-a22| %.1e; backward 10^4: "
                  "max residual %.2e (<= 1e-9), %d errors; %.2f s (limit 10 s)",
                  min_lambda, max_a11_a22, max_res, failures, secs)};
}

Outcome congruence_criterion() {
  int bad = 0;
  double worst = 0;
  for (int k = 0; k < 10000; ++k) {
    auto rng = derived_rng(3, k);
    SymMat3 b = gaussian_sym(rng);
    if (k % 2) {
      std::normal_distribution<double> n01;
      b = congruence(transpose(gaussian_mat3(rng)), SymMat3::diag(n01(rng), n01(rng), 0.0));
    }
    const CongruenceFactor f = congruence_factor(b);
    const double err = (congruence(transpose(f.m), f.d) - b).norm() / std::max(1.0, b.norm());
    worst = std::max(worst, err);
    const Inertia in = inertia(b);
    int np = 0, nm = 0, nz = 0;
    bool entries_ok = f.d.a12 == 0 && f.d.a13 == 0 && f.d.a23 == 0;
    for (double d : {f.d.a11, f.d.a22, f.d.a33}) {
      entries_ok = entries_ok && (d == 1 || d == -1 || d == 0);
      np += d == 1;
      nm += d == -1;
      nz += d == 0;
    }
    if (err > 1e-8 || !entries_ok || np != in.n_plus || nm != in.n_minus || nz != in.n_zero ||
        std::abs(det(f.m)) < 1e-10)
      ++bad;
  }
  return {bad == 0, fmt("10^4 B (half forced singular): worst relative reconstruction %.2e "
                        "(<= 1e-8), %d violations",
                        worst, bad)};
}

Outcome minor_test() {
  const double tol = 1e-9;
  int disagree = 0, banded = 0;
  for (int k = 0; k < 100000; ++k) {
    auto rng = derived_rng(4, k);
    const SymMat3 b = k % 2 ? testing::random_singular_indefinite(rng) : gaussian_sym(rng);
    const double d = std::abs(b.det()), scale = std::max(1.0, std::pow(b.norm(), 3));
    if (d > 0.1 * tol * scale && d < 10 * tol * scale) {
      ++banded;
      continue;
    }
    if (singular_indefinite_by_minors(b, tol) != singular_indefinite_by_inertia(b, default_zero_tol(b)))
      ++disagree;
  }
  const SymMat3 s1 = SymMat3::diag(1, -1, 0);
  const double ms = s1.principal_minor_sum();
  const bool ok = disagree == 0 && ms == -1.0 && singular_indefinite_by_minors(s1, tol) &&
                  minor_test_self_check();
  return {ok, fmt("10^5 B: %d disagreements outside band (%d in band); Diag(1,-1,0): minor sum "
                  "%.0f, verdict %s",
                  disagree, banded, ms, singular_indefinite_by_minors(s1, tol) ? "true" : "false")};
}

Subspace face_subspace(std::mt19937_64& rng, int d) {
  // Inside the face with range V (rank 2): V Y V^T for symmetric 2x2 Y.
  const Mat3 q = eigen_sym3(gaussian_sym(rng)).vectors;
  std::vector<SymMat3> gens;
  std::normal_distribution<double> n01;
  for (int i = 0; i < d; ++i) {
    const SymMat3 y{n01(rng), n01(rng), 0, n01(rng), 0, 0};
    gens.push_back(congruence(q, y));
  }
  return orthonormal_basis(gens);
}

Outcome end_to_end() {
  const auto t0 = Clock::now();
  int socr_count = 0, not_socr = 0, bad = 0, total = 0;
  std::string first_bad;
  ClassifyOptions copts;
  for (int d = 1; d <= 6; ++d) {
    for (int family = 0; family < 3; ++family) {
      if (family == 2 && d > 3) continue;  // faces of rank 2 hold at most 3 dimensions
      const int count = family == 2 ? 200 : 1000;
      for (int k = 0; k < count; ++k) {
        auto rng = derived_rng(5, 10000 * d + k, family);
        const Subspace l = family == 2 ? face_subspace(rng, d)
                                       : testing::random_subspace(rng, d, family == 0);
        ++total;
        std::string problem;
        try {
          const SliceClassification cls = classify_slice_detailed(l, copts);
          const Verdict& v = cls.verdict;
          if (v.socr) {
            ++socr_count;
            LiftOptions lopts;
            lopts.classify = copts;
            lopts.seed = k;
            const LiftCertificate c = lift_slice(l, cls, lopts);
            const VerificationReport f = verify_forward(c, l, 1000, k, 1e-8);
            const VerificationReport b = verify_backward(c, l, 100, k, 1e-7);
            if (!f.passed || !b.passed)
              problem = fmt("verification failed (psd %.1e, sub %.1e, pre %.1e)",
                            f.max_psd_violation, f.max_subspace_residual, b.max_preimage_residual);
          } else {
            ++not_socr;
            if (v.dim_s != 5 && v.dim_s != 6) problem = fmt("not socr with dim_S %d", v.dim_s);
            if (v.dim_s == 5) {
              const SymMat3 w = *v.witness_b;
              if (std::abs(w.det()) <= copts.det_tol * std::pow(w.norm(), 3))
                problem = "not socr with singular witness";
            }
          }
        } catch (const Error& e) {
          problem = e.what();
        }
        if (!problem.empty()) {
          if (bad++ == 0) first_bad = fmt("dim %d family %d index %d: %s", d, family, k, problem.c_str());
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && secs < 300.0,
          fmt("%d subspaces (dims 1-6; with PD generator, Gaussian, inside a face): %d socr "
              "certified, %d not socr, %d problems%s%s; %.1f s (limit 300 s)",
              total, socr_count, not_socr, bad, bad ? "; first: " : "", first_bad.c_str(), secs)};
}

Outcome singular_complement() {
  int bad = 0, lost = 0;
  double worst_l2 = 0, worst_perp = 0;
  for (int k = 0; k < 1000; ++k) {
    auto rng = derived_rng(6, k);
    const int d = 1 + k % 4;
    std::vector<SymMat3> gens = {SymMat3::identity()};
    while (static_cast<int>(gens.size()) < d) gens.push_back(gaussian_sym(rng));
    const Subspace l = orthonormal_basis(gens);
    try {
      const SymMat3 b = find_singular_complement(l);
      const auto ev = eigen_sym3(b).values;
      double perp = 0;
      for (const Vec6& a : l.basis) perp = std::max(perp, std::abs(dot(a, svec(b))));
      worst_l2 = std::max(worst_l2, std::abs(ev[1]));
      worst_perp = std::max(worst_perp, perp);
      if (std::abs(ev[1]) > 1e-10 || !(ev[0] < -1e-8) || !(ev[2] > 1e-8) || perp > 1e-12) ++bad;
    } catch (const Error& e) {
      ++bad;
      if (e.code() == ErrorCode::kIndefinitenessLost) ++lost;
    }
  }
  return {bad == 0 && lost == 0,
          fmt("10^3 L (dim 1-4, I in L): max|lambda2| %.1e (<= 1e-10), max|<B,L>| %.1e "
              "(<= 1e-12), %d failures, %d IndefinitenessLost",
              worst_l2, worst_perp, bad, lost)};
}

Outcome eliptope() {
  std::ostringstream out, err;
  const int code = cli::run_cli({"examples", "eliptope", "--samples", "10000"}, out, err);
  const json j = json::parse(out.str());
  if (j.contains("error")) return {false, j["message"].get<std::string>()};
  const json& a = j["agreement"];
  const int dim = j["dim_L"];
  const bool ok = code == 0 && j["status"] == "AffineSocRep" && a["samples"] == 10000 &&
                  a["disagree_outside_band"] == 0 && dim == 4;
  return {ok, fmt("AffineSocRep emitted, dim L' = %d (<= 4); 10^4 x in [-1.2,1.2]^3: %d agree, "
                  "%d in 1e-7 band, %d outside band (LMI-feasible %d)",
                  dim, a["agree"].get<int>(), a["disagree_in_band"].get<int>(),
                  a["disagree_outside_band"].get<int>(), a["lmi_feasible"].get<int>())};
}

Outcome invariance() {
  int scale_bad = 0, cong_bad = 0, socr_seen = 0;
  for (int k = 0; k < 1000; ++k) {
    auto rng = derived_rng(8, k);
    SymMat3 b = gaussian_sym(rng);
    if (k % 3 == 1) b = testing::random_singular_indefinite(rng);
    if (k % 3 == 2) b = congruence(gaussian_mat3(rng), SymMat3::diag(1, 0.5, 0));
    const bool base = classify_orthogonal(b).socr;
    socr_seen += base;
    std::uniform_real_distribution<double> u(0.01, 100.0);
    const double c = (k % 2 ? -1.0 : 1.0) * u(rng);
    if (classify_orthogonal(c * b).socr != base) ++scale_bad;
    Mat3 r = gaussian_mat3(rng);
    while (std::abs(det(r)) < 0.1) r = gaussian_mat3(rng);
    if (classify_orthogonal(congruence(transpose(r), b)).socr != base) ++cong_bad;
  }
  return {scale_bad == 0 && cong_bad == 0,
          fmt("10^3 cB trials: %d changes; 10^3 R^T B R trials: %d changes (%d socr bases)",
              scale_bad, cong_bad, socr_seen)};
}

Outcome mutations() {
  const LiftCertificate g0 = canonical_lift();
  const Subspace s1 = testing::complement_of(SymMat3::diag(1, -1, 0));
  int caught = 0, by_forward = 0;
  std::string missed;
  for (int i = 0; i < 6; ++i) {
    for (int jj = 0; jj < 6; ++jj) {
      LiftCertificate m = g0;
      m.g[i][jj] += 1e-3 * std::max(std::abs(g0.g[i][jj]), 1.0);
      const bool fwd_fail = !verify_forward(m, s1, 10000, 0, 1e-8).passed;
      bool hit = fwd_fail;
      if (!hit) hit = !verify_backward(m, s1, 1000, 0, 1e-7).passed;
      caught += hit;
      by_forward += fwd_fail;
      if (!hit) missed += fmt(" (%d,%d)", i, jj);
    }
  }
  return {caught == 36, fmt("%d/36 single-entry perturbations caught (%d by forward checks)%s%s",
                            caught, by_forward, missed.empty() ? "" : "; missed:", missed.c_str())};
}

}  // namespace
}  // namespace socr

int main() {
  using namespace socr;
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"1 table1 reproduction", table1},
      {"2 canonical lift soundness/completeness", canonical},
      {"3 congruence factorization", congruence_criterion},
      {"4 minor test agreement", minor_test},
      {"5 end-to-end consistency", end_to_end},
      {"6 singular complement search", singular_complement},
      {"7 eliptope pipeline", eliptope},
      {"8 invariance", invariance},
      {"9 mutation sensitivity", mutations},
  };
  std::printf("kernels: %s\n", std::string(kernels::to_string(kernels::active_isa())).c_str());
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s  %-42s %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed ? 1 : 0;
}
