#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hkq/levelset.hpp"
#include "hkq/verify.hpp"

namespace hkq {

inline constexpr int kReportSchemaVersion = 1;

nlohmann::json to_json(const QuaternionVector& u);  // flat coordinate-major array
QuaternionVector quaternion_vector_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SamplePoint& pt);
nlohmann::json to_json(const std::vector<SamplePoint>& samples);
/// Parses the sample-file format; ranks and margins are read back verbatim.
std::vector<SamplePoint> samples_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MinorTriple& m);
nlohmann::json to_json(const BoxQuad& b);  // keys "--", "+-", "-+", "++"
nlohmann::json to_json(const ObstructionReport& r);
nlohmann::json to_json(const ParityReport& r);
nlohmann::json to_json(const CertificateReport& c);
nlohmann::json to_json(const DimensionTable& d);
nlohmann::json to_json(const VertexScanReport& v);
nlohmann::json to_json(const CoassociativityReport& c);
nlohmann::json to_json(const VerificationReport& r);
nlohmann::json to_json(const SuiteReport& s);

/// Indented text with two-space indent and a trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace hkq
