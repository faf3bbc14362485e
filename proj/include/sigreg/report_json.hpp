#pragma once

// JSON documents for the reports, plus readers used for round-trip checks.
// Every top-level document carries "kind" and "schema_version".

#include <json.hpp>

#include "sigreg/applications.hpp"
#include "sigreg/ratios.hpp"
#include "sigreg/signs.hpp"
#include "sigreg/sr_check.hpp"

namespace sigreg {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

Json make_document(const std::string& kind);

Json to_json(const SignChangeSummary& s);
Json to_json(const UnimodalityVerdict& v);
Json to_json(const SRReport& r);
Json to_json(const VariationReport& r);
Json to_json(const RatioClassification& r);
Json to_json(const RMonotoneReport& r);
Json to_json(const HypergeometricClassification& r);
Json to_json(const NuttallRatioReport& r);
Json to_json(const BesselRatioReport& r);
Json to_json(const MeijerWeightReport& r);

Json signature_json(const std::optional<Signature3>& s);

UnimodalityVerdict verdict_from_json(const Json& j);
SRReport sr_report_from_json(const Json& j);

/// Walks a parsed document, re-reading every embedded verdict and SR report.
/// Throws InputError on an unknown kind or a malformed member.
void validate_report(const Json& doc);

}  // namespace sigreg
