#pragma once

#include "larclab/commlab.hpp"
#include "larclab/designs.hpp"
#include "larclab/f2.hpp"
#include "larclab/fourier.hpp"
#include "larclab/pdt.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace larclab {

// All serialization uses ordered JSON so seeded runs are byte-identical.
using Json = nlohmann::ordered_json;

Json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const Json& j);

Json affine_to_json(const AffineSubspace& w);
AffineSubspace affine_from_json(const Json& j);

Json family_to_json(const SubspaceFamily& fam);
SubspaceFamily family_from_json(const Json& j);

Json certificate_to_json(const DesignCertificate& cert);
DesignCertificate certificate_from_json(const Json& j);

Json function_to_json(const PseudoBooleanFunction& f);
PseudoBooleanFunction function_from_json(const Json& j);

Json spectrum_to_json(const FourierSpectrum& spec);

Json spectral_report_to_json(const SpectralReport& rep);
Json grolmusz_to_json(const GrolmuszResult& res);

Json scan_to_json(const CorruptionScanResult& res, const Rational& eps);

Json rectangle_to_json(const Rectangle& r);
Rectangle rectangle_from_json(const Json& j);

Json distribution_to_json(const CubeDistribution& d);
// Accepts {"n", "probs": ["p/q", ...]} or {"n", "support": [ints]} (uniform).
CubeDistribution distribution_from_json(const Json& j);

Json conjecture_report_to_json(const ConjectureReport& rep);
Json projection_report_to_json(const ProjectionReport& rep);

void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);

}  // namespace larclab
