#include "socr/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <optional>

#include "socr/errors.hpp"
#include "socr/io.hpp"
#include "socr/linalg.hpp"

namespace socr::cli {

namespace {

using io::json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
    case ErrorCode::kZeroMatrix:
    case ErrorCode::kPreconditionViolated:
      return kBadInput;
    case ErrorCode::kNotSocr:
    case ErrorCode::kNotInSlice:
    case ErrorCode::kEmptyInterval:
    case ErrorCode::kNotSingularIndefinite:
      return kClaimFailed;
    default:
      return kNumerical;
  }
}

struct Flags {
  std::string matrix, subspace, cert, lmi, output, which;
  std::optional<double> tol;
  double backward_tol = 1e-7;
  int samples = 1000;
  std::optional<int> backward_samples;
  std::uint64_t seed = 0;
  bool pretty = false;
};

class Runner {
 public:
  Runner(const Flags& f, std::ostream& out, std::ostream& err) : f_(f), out_(out), err_(err) {}

  int classify() {
    ClassifyOptions opts;
    if (f_.tol) opts.det_tol = opts.zero_tol = *f_.tol;
    opts.facial.seed = f_.seed;
    json j;
    if (!f_.matrix.empty()) {
      const SymMat3 b = io::matrix_from_json(io::read_json_file(f_.matrix));
      j = io::verdict_to_json(classify_orthogonal(b, opts));
      j["input"] = "matrix";
    } else {
      const io::SubspaceInput in = io::subspace_from_json(io::read_json_file(f_.subspace));
      j = io::verdict_to_json(classify_slice(in.l, opts));
      j["input"] = "subspace";
      j["dim_L"] = in.l.dim();
    }
    emit(j);
    return kOk;
  }

  int lift() {
    const io::SubspaceInput in = io::subspace_from_json(io::read_json_file(f_.subspace));
    LiftOptions opts;
    opts.seed = f_.seed;
    opts.classify.facial.seed = f_.seed;
    if (f_.tol) opts.forward_tol = *f_.tol;
    const LiftCertificate cert = lift_slice(in.l, opts);
    const json cj = io::certificate_to_json(cert);
    if (!f_.output.empty()) io::write_json_file(f_.output, cj, f_.pretty);
    emit(f_.output.empty() ? cj
                           : json{{"written", f_.output},
                                  {"provenance", std::string(to_string(cert.provenance))},
                                  {"E_rows", cert.e.size()}});
    return kOk;
  }

  int verify() {
    const LiftCertificate cert = io::certificate_from_json(io::read_json_file(f_.cert));
    const io::SubspaceInput in = io::subspace_from_json(io::read_json_file(f_.subspace));
    const double tol = f_.tol.value_or(1e-8);
    const int nb = f_.backward_samples.value_or(std::max(1, f_.samples / 10));
    const VerificationReport rep = merge(verify_forward(cert, in.l, f_.samples, f_.seed, tol),
                                         verify_backward(cert, in.l, nb, f_.seed, f_.backward_tol));
    emit(io::report_to_json(rep));
    return rep.passed ? kOk : kClaimFailed;
  }

  int preimage_cmd() {
    const LiftCertificate cert = io::certificate_from_json(io::read_json_file(f_.cert));
    const SymMat3 a = io::matrix_from_json(io::read_json_file(f_.matrix));
    const double tol = f_.tol.value_or(1e-9);
    const Preimage p = preimage(cert, a, tol);
    emit(io::preimage_to_json(p));
    return p.residual <= tol ? kOk : kClaimFailed;
  }

  int spectra() {
    const LMI lmi = io::lmi_from_json(io::read_json_file(f_.lmi));
    LiftOptions opts;
    opts.seed = f_.seed;
    opts.classify.facial.seed = f_.seed;
    const SocRepResult res = affine_soc_rep(lmi, opts);
    json j;
    if (const auto* rep = std::get_if<AffineSocRep>(&res)) {
      j = {{"status", "AffineSocRep"}, {"representation", io::soc_rep_to_json(*rep)}};
    } else {
      const auto& ina = std::get<Inapplicable>(res);
      j = {{"status", "Inapplicable"},
           {"dim_L", ina.l_prime.dim()},
           {"verdict", io::verdict_to_json(ina.verdict)},
           {"note", "the slice criterion does not apply; affine representability is not decided"}};
    }
    if (!f_.output.empty()) io::write_json_file(f_.output, j, f_.pretty);
    emit(j);
    return kOk;
  }

  int examples() {
    if (f_.which == "table1") return table1();
    if (f_.which == "eliptope") return eliptope();
    err_ << "unknown example '" << f_.which << "' (expected table1 or eliptope)\n";
    return kBadInput;
  }

 private:
  void emit(const json& j) { out_ << j.dump(f_.pretty ? 2 : -1) << '\n'; }

  int table1() {
    struct Row {
      const char* name;
      const char* equation;
      SymMat3 normal;
      bool expected;
    };
    // <A, B> = 0 written out; off-diagonal entries of B count twice.
    const Row rows[] = {
        {"S1", "a11 = a22", SymMat3::diag(1, -1, 0), true},
        {"S2", "a11 = a22 + a33", SymMat3::diag(1, -1, -1), false},
        {"S3", "a22 = a13", SymMat3{0, 1, 0, 0, -0.5, 0}, false},
    };
    ClassifyOptions opts;
    opts.facial.seed = f_.seed;
    const auto t0 = std::chrono::steady_clock::now();
    json out = json::array();
    bool all = true;
    for (const Row& r : rows) {
      const Verdict by_normal = classify_orthogonal(r.normal, opts);
      const Vec6 n = svec(r.normal);
      const Subspace l = orthogonal_complement(orthonormal_basis(std::span<const Vec6>(&n, 1)));
      const Verdict by_slice = classify_slice(l, opts);
      const bool match = by_normal.socr == r.expected && by_slice.socr == r.expected;
      all = all && match;
      out.push_back({{"slice", r.name},
                     {"equation", r.equation},
                     {"normal", io::matrix_to_json(r.normal)},
                     {"socr", by_normal.socr},
                     {"socr_from_subspace", by_slice.socr},
                     {"reason", std::string(to_string(by_normal.reason))},
                     {"expected", r.expected},
                     {"match", match}});
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit({{"table1", out}, {"all_match", all}, {"seconds", secs}});
    return all ? kOk : kClaimFailed;
  }

  int eliptope() {
    const LMI lmi = eliptope_lmi();
    LiftOptions opts;
    opts.seed = f_.seed;
    opts.classify.facial.seed = f_.seed;
    const SocRepResult res = affine_soc_rep(lmi, opts);
    const auto* rep = std::get_if<AffineSocRep>(&res);
    if (!rep) {
      emit({{"status", "Inapplicable"},
            {"verdict", io::verdict_to_json(std::get<Inapplicable>(res).verdict)}});
      return kClaimFailed;
    }
    const int n = f_.samples;
    const AgreementStats st = sample_agreement(lmi, *rep, n, f_.seed, f_.tol.value_or(1e-7), 1.2);
    const bool ok = st.disagree_outside_band == 0 && rep->l_prime.dim() <= 4;
    emit({{"status", "AffineSocRep"},
          {"dim_L", rep->l_prime.dim()},
          {"lineality_dim", lmi_lineality(lmi).size()},
          {"representation", io::soc_rep_to_json(*rep)},
          {"agreement", io::agreement_to_json(st)},
          {"passed", ok}});
    return ok ? kOk : kClaimFailed;
  }

  const Flags& f_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Second-order cone representability of slices of the 3x3 psd cone"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", f.tol, "Tolerance");
    sub->add_option("--seed", f.seed, "Random seed (default 0)");
    sub->add_flag("--pretty", f.pretty, "Indent JSON output");
  };

  auto* classify = app.add_subcommand("classify", "Decide whether a slice is socr");
  auto* m_opt = classify->add_option("--matrix", f.matrix, "Normal matrix B of S_B");
  auto* s_opt = classify->add_option("--subspace", f.subspace, "Subspace file");
  m_opt->excludes(s_opt);
  classify->require_option(1);
  add_common(classify);

  auto* lift = app.add_subcommand("lift", "Synthesize a Q^2 lift certificate");
  lift->add_option("--subspace", f.subspace)->required();
  lift->add_option("-o,--output", f.output, "Certificate file");
  add_common(lift);

  auto* verify = app.add_subcommand("verify", "Check a certificate by sampling");
  verify->add_option("--cert", f.cert)->required();
  verify->add_option("--subspace", f.subspace)->required();
  verify->add_option("--samples", f.samples, "Forward samples")->check(CLI::PositiveNumber);
  verify->add_option("--backward-samples", f.backward_samples, "Default: samples / 10");
  verify->add_option("--backward-tol", f.backward_tol, "Backward tolerance (default 1e-7)");
  add_common(verify);

  auto* pre = app.add_subcommand("preimage", "Preimage of a slice element");
  pre->add_option("--cert", f.cert)->required();
  pre->add_option("--matrix", f.matrix)->required();
  add_common(pre);

  auto* spectra = app.add_subcommand("spectra", "Affine SOC representation of an LMI");
  spectra->add_option("--lmi", f.lmi)->required();
  spectra->add_option("-o,--output", f.output, "Representation file");
  add_common(spectra);

  auto* examples = app.add_subcommand("examples", "Worked examples");
  examples->add_option("which", f.which, "table1 | eliptope")->required();
  examples->add_option("--samples", f.samples, "Agreement samples (eliptope)");
  add_common(examples);
  f.samples = 1000;

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kBadInput;
  }
  if (examples->parsed() && f.which == "eliptope" && examples->count("--samples") == 0)
    f.samples = 10000;

  Runner r(f, out, err);
  try {
    if (classify->parsed()) return r.classify();
    if (lift->parsed()) return r.lift();
    if (verify->parsed()) return r.verify();
    if (pre->parsed()) return r.preimage_cmd();
    if (spectra->parsed()) return r.spectra();
    return r.examples();
  } catch (const Error& e) {
    err << e.what() << '\n';
    out << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    out << json{{"error", "InvalidInput"}, {"message", e.what()}}.dump() << '\n';
    return kBadInput;
  }
}

}  // namespace socr::cli
