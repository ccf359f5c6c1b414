#include <gtest/gtest.h>

#include <chrono>

#include "hkq/errors.hpp"
#include "hkq/report_json.hpp"
#include "hkq/verify.hpp"

using namespace hkq;

namespace {

SamplingOptions small() {
  SamplingOptions o;
  o.count = 20;
  return o;
}

}  // namespace

TEST(Verify, AdmissibleTriplePasses) {
  const auto r = verify_triple({{1, 2, 3}}, small());
  EXPECT_TRUE(r.passed());
  ASSERT_TRUE(r.vertices.has_value());
  EXPECT_TRUE(r.vertices->matches_prediction);
  EXPECT_EQ(r.dimensions.observed_nullity, 15);
  EXPECT_TRUE(r.witnesses.empty());
}

TEST(Verify, FailedGcdConditionsProduceVerifiedWitnesses) {
  for (const WeightTriple p : {WeightTriple{{1, 3, 5}}, WeightTriple{{2, 3, 4}},
                               WeightTriple{{3, 5, 6}}, WeightTriple{{1, 4, 7}}}) {
    const auto ws = isotropy_witnesses(p, 42);
    EXPECT_FALSE(ws.empty());
    for (const auto& w : ws) {
      EXPECT_TRUE(w.verified) << w.condition;
      EXPECT_LE(w.residual, 1e-12);
      EXPECT_LT(w.displacement, 1e-10);
      const bool trivial_angle = w.element.angles.empty() || w.element.angles[0] == 0.0;
      EXPECT_FALSE(trivial_angle);
    }
  }
  EXPECT_TRUE(isotropy_witnesses({{1, 2, 3}}, 42).empty());
}

TEST(Verify, SingularTripleRecordsStratumAndCoassociativity) {
  const auto r = verify_triple({{1, 1, 1}}, small());
  ASSERT_TRUE(r.singular_stratum.has_value());
  EXPECT_TRUE(r.singular_stratum->verified);
  EXPECT_EQ(r.singular_stratum->killing_rank, 3);
  ASSERT_TRUE(r.coassociativity.has_value());
  EXPECT_TRUE(r.coassociativity->level_set.orbit_passed);
  EXPECT_EQ(r.labels, std::vector<std::string>{"quasi-free / orbifold"});
}

TEST(Verify, QuadNotes) {
  const auto a = verify_quad({{0, 1, 2, 3}}, small());
  EXPECT_TRUE(a.passed());
  EXPECT_EQ(a.notes.size(), 1u);
  const auto b = verify_quad({{1, 1, 1, 1}}, small());
  EXPECT_FALSE(b.verdicts.at(0).second.value);
  EXPECT_EQ(b.notes.size(), 1u);
  EXPECT_TRUE(b.certificates.empty());
}

TEST(Verify, ThetaOrbifoldPoints) {
  const auto r = verify_theta({{1, 0, 1}, {0, 1, 1}}, small());
  EXPECT_TRUE(r.passed());
  ASSERT_TRUE(r.singular_orders.has_value());
  EXPECT_EQ(*r.singular_orders, (std::array<std::uint64_t, 4>{1, 3, 1, 1}));
  for (int k = 0; k < 4; ++k) EXPECT_EQ((*r.singular_orders_cross_check)[k].order, (*r.singular_orders)[k]);
  EXPECT_EQ(r.labels, std::vector<std::string>{"orbifold"});
  const auto bad = verify_theta({{1, 0, 1}, {0, 1, 2}}, small());
  EXPECT_FALSE(bad.singular_orders.has_value());
  EXPECT_TRUE(bad.certificates.empty());
}

TEST(Verify, ReportsArePureFunctionsOfTheirInputs) {
  const auto a = dump(to_json(verify_triple({{1, 2, 3}}, small())));
  auto o = small();
  o.threads = 3;
  const auto b = dump(to_json(verify_triple({{1, 2, 3}}, o)));
  EXPECT_EQ(a, b);
  const auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j.at("schema_version"), kReportSchemaVersion);
  EXPECT_EQ(j.at("seed"), 42);
}

TEST(Suite, EnumerationOnlyIsFast) {
  SuiteOptions o;
  o.bound = 4;
  o.enumeration_only = true;
  const auto t0 = std::chrono::steady_clock::now();
  const SuiteReport r = run_acceptance_suite(o);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_EQ(r.criteria.size(), 5u);
  EXPECT_LT(secs, 1.0);
  EXPECT_THROW(run_criterion(12, o), Error);
}

TEST(Suite, TightRankThresholdKeepsRegularValues) {
  SuiteOptions o;
  o.rank_relative = 1e-14;
  o.count = 20;
  const CriterionResult c = run_criterion(6, o);
  EXPECT_TRUE(c.passed);
  for (const auto& fam : c.detail) EXPECT_GT(fam.at("certificate").at("min_margin").get<double>(), 1e-6);
}

TEST(SampleFiles, JsonRoundTripIsExact) {
  const auto pts = sample_level_set(LevelSetSpec::theta({{1, 0, 1}, {0, 1, 1}}), 5, 8).points;
  const auto back = samples_from_json(nlohmann::json::parse(dump(to_json(pts))));
  ASSERT_EQ(back.size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(back[i].u, pts[i].u);
    EXPECT_EQ(back[i].residual, pts[i].residual);
    EXPECT_EQ(back[i].jacobian_rank, pts[i].jacobian_rank);
  }
}
