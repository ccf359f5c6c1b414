#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "hkq/algebra.hpp"

namespace hkq {

/// Environment variable naming the convention file read by the CLI.
inline constexpr const char* kConventionEnv = "HKQ_CONVENTION_FILE";

nlohmann::json convention_to_json(const MultiplicationConvention& conv);

/// Parses and re-validates (norm composition and the ν identity on seeded
/// samples). Throws Io on malformed input, NoConventionFound if the table does
/// not reproduce ν. The result is marked calibrated.
MultiplicationConvention convention_from_json(const nlohmann::json& j);

void write_convention_file(const std::string& path, const MultiplicationConvention& conv);
MultiplicationConvention read_convention_file(const std::string& path);

/// The file named by HKQ_CONVENTION_FILE when set, else default_convention().
MultiplicationConvention load_convention();

}  // namespace hkq
