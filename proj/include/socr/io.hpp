#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "socr/classifier.hpp"
#include "socr/lift_synthesis.hpp"
#include "socr/lift_verify.hpp"
#include "socr/spectra.hpp"
#include "socr/subspace.hpp"

// JSON file formats used by the command line tool. Loaders throw
// Error(kInvalidInput) on malformed content.
namespace socr::io {

using json = nlohmann::json;

inline constexpr const char* kCoordinateConvention = "lorentz-x3-radial";

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j, bool pretty = false);

/// {"matrix": 3x3 row-major} or {"svec": [6]}, exactly one key.
SymMat3 matrix_from_json(const json& j);
json matrix_to_json(const SymMat3& a);

struct SubspaceInput {
  Subspace l;
  int generators = 0;
};

/// {"generators": [matrix, ...]}; orthonormalized on load.
SubspaceInput subspace_from_json(const json& j);
json subspace_to_json(const Subspace& l);

/// {"A": [matrix, ...], "B": matrix}
LMI lmi_from_json(const json& j);
json lmi_to_json(const LMI& lmi);

json certificate_to_json(const LiftCertificate& cert);
LiftCertificate certificate_from_json(const json& j);

json verdict_to_json(const Verdict& v);
json report_to_json(const VerificationReport& r);
json preimage_to_json(const Preimage& p);
json soc_rep_to_json(const AffineSocRep& rep);
json agreement_to_json(const AgreementStats& s);

}  // namespace socr::io
