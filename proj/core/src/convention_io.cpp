#include "hkq/convention_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hkq/errors.hpp"
#include "internal.hpp"

namespace hkq {

namespace {
constexpr const char* kFormat = "hkq-octonion-convention";
constexpr int kFormatVersion = 1;
}  // namespace

nlohmann::json convention_to_json(const MultiplicationConvention& conv) {
  nlohmann::json products = nlohmann::json::array();
  for (int m = 0; m < 7; ++m)
    for (int n = m + 1; n < 7; ++n) {
      const int s = conv.sign(m, n);
      products.push_back(std::string(kOctonionBasisNames[m]) + "*" + kOctonionBasisNames[n] +
                         " = " + (s > 0 ? "+" : "-") +
                         kOctonionBasisNames[MultiplicationConvention::third(m, n)]);
    }
  return {
      {"format", kFormat},
      {"version", kFormatVersion},
      {"basis", kOctonionBasisNames},
      {"signs", conv.signs()},
      {"products", products},
      {"nu_pairing",
       {{"unit", kOctonionBasisNames[conv.pairing_unit()]},
        {"cross_term_coefficient", conv.cross_term_coefficient()},
        {"formula", "nu_a = 2 <f0 f_a + c * f_b f_c, unit>, (a,b,c) cyclic in (1,2,3)"}}},
  };
}

MultiplicationConvention convention_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kFormat)
      throw Error(ErrorKind::Io, "not an octonion convention file");
    if (j.at("version").get<int>() != kFormatVersion)
      throw Error(ErrorKind::Io, "unsupported convention file version");
    const auto signs = j.at("signs").get<std::array<int, 21>>();
    const auto& pairing = j.at("nu_pairing");
    const auto unit_name = pairing.at("unit").get<std::string>();
    int unit = -1;
    for (int m = 0; m < 7; ++m)
      if (unit_name == kOctonionBasisNames[m]) unit = m;
    if (unit < 0) throw Error(ErrorKind::Io, "unknown pairing unit '" + unit_name + "'");
    auto conv = MultiplicationConvention::from_signs(
        signs, unit, pairing.at("cross_term_coefficient").get<int>());
    if (!conv.satisfies_norm_composition())
      throw Error(ErrorKind::NoConventionFound, "stored table is not norm-composing");
    if (detail::nu_deviation(conv, detail::random_points7(100, 99), 1e-10) > 1e-10)
      throw Error(ErrorKind::NoConventionFound, "stored table does not reproduce nu");
    conv.mark_calibrated();
    return conv;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Io, std::string("malformed convention file: ") + e.what());
  }
}

void write_convention_file(const std::string& path, const MultiplicationConvention& conv) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << convention_to_json(conv).dump(2) << '\n';
}

MultiplicationConvention read_convention_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Io, path + ": " + e.what());
  }
  return convention_from_json(j);
}

MultiplicationConvention load_convention() {
  if (const char* path = std::getenv(kConventionEnv); path && *path)
    return read_convention_file(path);
  return default_convention();
}

}  // namespace hkq
