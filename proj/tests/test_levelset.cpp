#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hkq/errors.hpp"
#include "hkq/levelset.hpp"
#include "hkq/rng.hpp"

using namespace hkq;

TEST(Rank, DiagonalThresholds) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1e-3;
  m(2, 2) = 1e-9;
  const RankInfo r = numerical_rank(m, 1e-6);
  EXPECT_EQ(r.rank, 2);
  EXPECT_DOUBLE_EQ(r.sigma_max, 1.0);
  EXPECT_DOUBLE_EQ(r.sigma_min_retained, 1e-3);
  EXPECT_DOUBLE_EQ(r.sigma_first_dropped, 1e-9);
  EXPECT_EQ(numerical_rank(m, 1e-12).rank, 3);
  EXPECT_EQ(numerical_rank(Eigen::MatrixXd::Zero(2, 2), 1e-6).rank, 0);
}

TEST(Dimensions, Tables) {
  struct Row {
    LevelSetSpec spec;
    int sphere, constraints, level, group, quotient;
  };
  const Row rows[] = {{LevelSetSpec::triple({{1, 2, 3}}), 27, 13, 15, 4, 11},
                      {LevelSetSpec::quad({{0, 1, 2, 3}}), 31, 13, 19, 4, 15},
                      {LevelSetSpec::theta({{1, 0, 1}, {0, 1, 1}}), 27, 16, 12, 5, 7},
                      {LevelSetSpec::stiefel(), 27, 10, 18, 3, 15}};
  for (const auto& r : rows) {
    const DimensionTable d = dimension_report(r.spec);
    EXPECT_EQ(d.ambient_sphere_dim, r.sphere);
    EXPECT_EQ(d.constraint_count, r.constraints);
    EXPECT_EQ(d.level_set_dim, r.level);
    EXPECT_EQ(d.group_dim, r.group);
    EXPECT_EQ(d.quotient_dim, r.quotient);
    EXPECT_TRUE(d.chain_holds);
    EXPECT_FALSE(d.observed_nullity.has_value());
  }
}

TEST(Projection, ConvergesAndRejectsDegenerateStarts) {
  const auto spec = LevelSetSpec::triple({{1, 2, 3}});
  const SamplePoint pt = project_to_level_set(random_start(spec, 1, 0), spec);
  EXPECT_LE(pt.residual, 1e-12);
  EXPECT_EQ(pt.jacobian_rank, 13);
  EXPECT_EQ(pt.killing_rank, 4);
  try {
    project_to_level_set(QuaternionVector(7), spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateStart);
  }
}

TEST(Projection, DivergenceCarriesHistory) {
  const auto spec = LevelSetSpec::triple({{1, 2, 3}});
  try {
    project_to_level_set(random_start(spec, 1, 0), spec, 1e-30, 2);
    FAIL();
  } catch (const DivergedError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Diverged);
    EXPECT_FALSE(e.history().empty());
  }
}

TEST(Sampling, DeterministicAndThreadIndependent) {
  const auto spec = LevelSetSpec::quad({{0, 1, 2, 3}});
  const SampleSet a = sample_level_set(spec, 24, 42, 1);
  const SampleSet b = sample_level_set(spec, 24, 42, 8);
  const SampleSet c = sample_level_set(spec, 24, 43, 3);
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_EQ(a.points[i].u, b.points[i].u);
    EXPECT_EQ(a.points[i].seed, b.points[i].seed);
    EXPECT_EQ(a.points[i].residual, b.points[i].residual);
  }
  EXPECT_FALSE(a.points[0].u == c.points[0].u);
  EXPECT_DOUBLE_EQ(a.converged_fraction(), 1.0);
}

TEST(Certificates, TripleSamplesAreRegularAndFree) {
  const auto spec = LevelSetSpec::triple({{1, 2, 3}});
  const auto pts = sample_level_set(spec, 30, 9).points;
  const auto smooth = smoothness_certificate(pts, spec);
  const auto free = freeness_certificate(pts, spec);
  EXPECT_TRUE(smooth.passed);
  EXPECT_TRUE(free.passed);
  EXPECT_EQ(smooth.observed, std::vector<int>{13});
  EXPECT_EQ(free.observed, std::vector<int>{4});
  EXPECT_GT(smooth.min_margin, 1e-6);
  // a stricter threshold still certifies
  auto strict = spec;
  strict.tolerances().rank_relative = 1e-14;
  EXPECT_TRUE(smoothness_certificate(pts, strict).passed);
  // a wrong expectation is reported with offenders
  const auto wrong = freeness_certificate(pts, spec, 3);
  EXPECT_FALSE(wrong.passed);
  EXPECT_EQ(wrong.offenders.size(), pts.size());
}

TEST(Strata, GenericSamplesAvoidTheSpecialStrata) {
  const auto pts = sample_level_set(LevelSetSpec::triple({{1, 2, 3}}), 20, 3).points;
  const StrataCounts s = count_strata(pts);
  EXPECT_EQ(s.s1, 20);
  EXPECT_EQ(s.s3, 20);
  EXPECT_EQ(s.s0_and_s2, 0);
  const StrataClass v = classify_strata(vertex_point7());
  EXPECT_FALSE(v.u1_vanishes);
  EXPECT_FALSE(v.pair_vanishes);
  QuaternionVector w = vertex_point7();
  w[3] = w[4] = Quaternion{};
  EXPECT_TRUE(classify_strata(w).pair_vanishes);
  w[0] = Quaternion{};
  EXPECT_TRUE(classify_strata(w).u1_vanishes);
}

TEST(Vertices, PredictedPatternsAndWitnesses) {
  const auto pats = all_support_patterns();
  ASSERT_EQ(pats.size(), 35u);
  int predicted = 0;
  const auto spec = LevelSetSpec::triple({{1, 2, 3}});
  for (const auto& p : pats) {
    if (!is_predicted_vertex(p)) continue;
    ++predicted;
    EXPECT_LE(constraint_residual(explicit_vertex_witness(p), spec).norm(), 1e-12) << to_string(p);
  }
  EXPECT_EQ(predicted, 8);
  EXPECT_EQ(to_string(SupportPattern{0, 1, 3, 5}), "{1,2,4,6}");
}

TEST(Vertices, ScanMatchesPrediction) {
  const auto spec = LevelSetSpec::triple({{1, 2, 3}});
  const auto scan = vertex_support_scan(spec, 1e-12, 20, 42);
  EXPECT_TRUE(scan.matches_prediction);
  EXPECT_EQ(scan.feasible, 8);
  EXPECT_EQ(scan.infeasible, 27);
  EXPECT_THROW(vertex_support_scan(LevelSetSpec::quad({{0, 1, 2, 3}}), 1e-12), Error);
}

TEST(SingularStratum, FixedByTheCircleAndKillingRankThree) {
  const auto spec = LevelSetSpec::triple({{1, 1, 1}});
  for (std::uint64_t seed : {1u, 2u, 42u}) {
    const QuaternionVector u = singular_stratum_point(seed);
    EXPECT_LT(constraint_residual(u, spec).norm(), 1e-10);
    EXPECT_NEAR(u[0].norm(), 0.0, 1e-14);
    for (double t : {0.3, 1.0, 2.5, 4.0})
      EXPECT_LT((action_apply(u, singular_isotropy_element(t), spec) - u).norm(), 1e-10);
    EXPECT_EQ(numerical_rank(killing_fields(u, spec), 1e-6).rank, 3);
  }
  // the other sign of the rotation does not fix the point
  const QuaternionVector u = singular_stratum_point(7);
  const GroupElement g{std::cos(1.0) * Quaternion::one() - std::sin(1.0) * Quaternion::i(), {1.0}};
  EXPECT_GT((action_apply(u, g, spec) - u).norm(), 1e-3);
}

TEST(Coassociativity, ComplementIsOrthogonalToTheFrame) {
  const auto spec = LevelSetSpec::triple({{1, 1, 1}});
  const auto pts = sample_level_set(spec, 5, 11).points;
  for (const auto& pt : pts) {
    const auto c = frame_complement(pt.u);
    EXPECT_LT((c * c.transpose() - Eigen::Matrix3d::Identity()).norm(), 1e-12);
    const FrameMatrix b = frame_matrix(pt.u);
    EXPECT_LT((b.rightCols(7) * c.transpose()).norm(), 1e-12);
  }
}

TEST(Coassociativity, OrbitMaximumIsOneOnTheLevelSet) {
  const auto spec = LevelSetSpec::triple({{1, 1, 1}});
  const auto pts = sample_level_set(spec, 20, 12).points;
  const auto rep = coassociativity_check(pts, default_convention());
  EXPECT_TRUE(rep.orbit_passed);
  EXPECT_LT(rep.max_orbit_deficit, 1e-9);
  for (double v : rep.values) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0 + 1e-12);
  }
}

TEST(Coassociativity, ContrastSamplesDepart) {
  const auto pts = sample_level_set(LevelSetSpec::stiefel(), 40, 13).points;
  const auto rep = coassociativity_check(pts, default_convention());
  int departures = 0;
  for (double v : rep.orbit_values) departures += std::abs(v - 1.0) > 1e-3;
  EXPECT_GE(departures, 38);
}
