#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "hkq/convention_io.hpp"
#include "hkq/errors.hpp"

using namespace hkq;

namespace {

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST(ConventionIo, RoundTrip) {
  const std::string path = temp_path("hkq_conv_roundtrip.json");
  write_convention_file(path, default_convention());
  const MultiplicationConvention back = read_convention_file(path);
  EXPECT_TRUE(back.calibrated());
  EXPECT_EQ(back, default_convention());
  const auto j = convention_to_json(back);
  EXPECT_EQ(j.at("signs").size(), 21u);
  EXPECT_EQ(j.at("nu_pairing").at("cross_term_coefficient"), -1);
}

TEST(ConventionIo, TamperedTableIsRejected) {
  auto j = convention_to_json(default_convention());
  j["signs"][0] = -j["signs"][0].get<int>();
  EXPECT_THROW(convention_from_json(j), Error);
  auto k = convention_to_json(default_convention());
  k["signs"].erase(0);
  EXPECT_THROW(convention_from_json(k), Error);
  EXPECT_THROW(read_convention_file(temp_path("hkq_conv_missing_file.json")), Error);
}

TEST(ConventionIo, EnvironmentOverride) {
  const std::string path = temp_path("hkq_conv_env.json");
  write_convention_file(path, default_convention());
  ::setenv(kConventionEnv, path.c_str(), 1);
  EXPECT_EQ(load_convention(), default_convention());
  std::ofstream(path) << "{ not json";
  EXPECT_THROW(load_convention(), Error);
  ::unsetenv(kConventionEnv);
  EXPECT_EQ(load_convention(), default_convention());
}
