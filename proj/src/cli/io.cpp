#include "socr/io.hpp"

#include <fstream>

#include "socr/errors.hpp"

namespace socr::io {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::kInvalidInput, msg); }

double number(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

template <std::size_t N>
std::array<double, N> fixed_row(const json& j, const char* what) {
  if (!j.is_array() || j.size() != N)
    bad(std::string(what) + " must be an array of " + std::to_string(N) + " numbers");
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = number(j[i], what);
  return out;
}

json mat3_to_json(const Mat3& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(row);
  return out;
}

Mat3 mat3_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) bad(std::string(what) + " must be 3x3");
  Mat3 m;
  for (int i = 0; i < 3; ++i) m[i] = fixed_row<3>(j[i], what);
  return m;
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j, bool pretty) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path.string());
  out << j.dump(pretty ? 2 : -1) << '\n';
}

SymMat3 matrix_from_json(const json& j) {
  if (!j.is_object()) bad("matrix entry must be an object");
  const bool has_m = j.contains("matrix"), has_s = j.contains("svec");
  if (has_m == has_s) bad("matrix entry needs exactly one of \"matrix\" and \"svec\"");
  if (has_s) return smat(fixed_row<6>(j["svec"], "svec"));
  return SymMat3::from_full(mat3_from_json(j["matrix"], "matrix"));
}

json matrix_to_json(const SymMat3& a) { return {{"matrix", mat3_to_json(a.full())}}; }

SubspaceInput subspace_from_json(const json& j) {
  if (!j.is_object() || !j.contains("generators") || !j["generators"].is_array())
    bad("subspace file needs a \"generators\" array");
  std::vector<SymMat3> gens;
  for (const json& g : j["generators"]) gens.push_back(matrix_from_json(g));
  return {orthonormal_basis(gens), static_cast<int>(gens.size())};
}

json subspace_to_json(const Subspace& l) {
  json gens = json::array();
  for (const Vec6& v : l.basis) gens.push_back({{"svec", v}});
  return {{"generators", gens}};
}

LMI lmi_from_json(const json& j) {
  if (!j.is_object() || !j.contains("B")) bad("LMI file needs \"B\"");
  LMI lmi;
  if (j.contains("A")) {
    if (!j["A"].is_array()) bad("\"A\" must be an array");
    for (const json& a : j["A"]) lmi.a.push_back(matrix_from_json(a));
  }
  lmi.b = matrix_from_json(j["B"]);
  return lmi;
}

json lmi_to_json(const LMI& lmi) {
  json a = json::array();
  for (const SymMat3& ai : lmi.a) a.push_back(matrix_to_json(ai));
  return {{"A", a}, {"B", matrix_to_json(lmi.b)}};
}

json certificate_to_json(const LiftCertificate& cert) {
  json g = json::array();
  for (const auto& row : cert.g) g.push_back(row);
  json e = json::array();
  for (const Vec6& row : cert.e) e.push_back(row);
  json out = {{"m", LiftCertificate::m},
              {"G", g},
              {"E", e},
              {"provenance", std::string(to_string(cert.provenance))},
              {"coordinate_convention", kCoordinateConvention}};
  json aux = json::object();
  if (cert.conjugation) aux["conjugation"] = mat3_to_json(*cert.conjugation);
  if (!cert.range_basis.empty()) aux["range_basis"] = cert.range_basis;
  if (!aux.empty()) out["aux"] = aux;
  return out;
}

LiftCertificate certificate_from_json(const json& j) {
  if (!j.is_object()) bad("certificate must be an object");
  for (const char* key : {"m", "G", "E", "provenance", "coordinate_convention"})
    if (!j.contains(key)) bad(std::string("certificate is missing \"") + key + "\"");
  if (!j["coordinate_convention"].is_string() ||
      j["coordinate_convention"].get<std::string>() != kCoordinateConvention)
    bad("unsupported coordinate_convention");
  if (!j["m"].is_number_integer() || j["m"].get<int>() != LiftCertificate::m)
    bad("only m = 2 certificates are supported");

  LiftCertificate cert;
  const json& g = j["G"];
  if (!g.is_array() || g.size() != 6) bad("G must be 6x6");
  for (int i = 0; i < 6; ++i) cert.g[i] = fixed_row<6>(g[i], "G");
  if (!j["E"].is_array()) bad("E must be an array");
  for (const json& row : j["E"]) cert.e.push_back(fixed_row<6>(row, "E"));
  if (!j["provenance"].is_string()) bad("provenance must be a string");
  const auto p = provenance_from_string(j["provenance"].get<std::string>());
  if (!p) bad("unknown provenance");
  cert.provenance = *p;

  if (j.contains("aux")) {
    const json& aux = j["aux"];
    if (aux.contains("conjugation")) cert.conjugation = mat3_from_json(aux["conjugation"], "conjugation");
    if (aux.contains("range_basis")) {
      if (!aux["range_basis"].is_array()) bad("range_basis must be an array");
      for (const json& v : aux["range_basis"]) cert.range_basis.push_back(fixed_row<3>(v, "range_basis"));
    }
  }
  return cert;
}

json verdict_to_json(const Verdict& v) {
  json out = {{"socr", v.socr},
              {"reason", std::string(to_string(v.reason))},
              {"dim_S", v.dim_s},
              {"marginal", v.marginal}};
  if (v.witness_b) {
    out["witness_B"] = matrix_to_json(*v.witness_b);
    out["det_witness_B"] = v.witness_b->det();
  }
  return out;
}

json report_to_json(const VerificationReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"kind", f.kind}, {"input", f.input}, {"value", f.value}});
  return {{"samples_forward", r.samples_forward},
          {"samples_backward", r.samples_backward},
          {"max_psd_violation", r.max_psd_violation},
          {"max_subspace_residual", r.max_subspace_residual},
          {"max_preimage_residual", r.max_preimage_residual},
          {"failure_count", r.failure_count},
          {"failures", failures},
          {"apex_only", r.apex_only},
          {"passed", r.passed}};
}

json preimage_to_json(const Preimage& p) {
  return {{"z", p.z},
          {"residual", p.residual},
          {"q2_margin", q2_margin(p.z)},
          {"u_interval", {p.u_lo, p.u_hi}},
          {"u", p.u}};
}

json soc_rep_to_json(const AffineSocRep& rep) {
  json hz = json::array();
  for (const Vec6& row : rep.h_z) hz.push_back(row);
  return {{"n", rep.n},
          {"H_x", rep.h_x},
          {"H_z", hz},
          {"h", rep.h},
          {"cone", rep.cone},
          {"dim_L", rep.l_prime.dim()},
          {"verdict", verdict_to_json(rep.verdict)},
          {"certificate", certificate_to_json(rep.cert)}};
}

json agreement_to_json(const AgreementStats& s) {
  return {{"samples", s.samples},
          {"lmi_feasible", s.lmi_feasible},
          {"agree", s.agree},
          {"disagree_in_band", s.disagree_in_band},
          {"disagree_outside_band", s.disagree_outside_band},
          {"box", s.box}};
}

}  // namespace socr::io
