#include <gtest/gtest.h>

#include <limits>

#include "hkq/errors.hpp"
#include "hkq/rng.hpp"
#include "hkq/weightarith.hpp"
#include "oracles.hpp"

using namespace hkq;

TEST(Checked, OverflowThrows) {
  const Int big = std::numeric_limits<Int>::max();
  EXPECT_THROW(checked_add(big, 1), Error);
  EXPECT_THROW(checked_mul(big, 2), Error);
  EXPECT_THROW(checked_sub(std::numeric_limits<Int>::min(), 1), Error);
  EXPECT_THROW(checked_neg(std::numeric_limits<Int>::min()), Error);
  EXPECT_EQ(checked_mul(-3, 4), -12);
  try {
    admissibility({{1, big, big - 1}});
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Overflow);
  }
}

TEST(Gcd, Basics) {
  EXPECT_EQ(gcd(0, 0), 0);
  EXPECT_EQ(gcd(0, -7), 7);
  EXPECT_EQ(gcd(-12, 18), 6);
}

TEST(Admissibility, Examples) {
  EXPECT_TRUE(is_admissible_triple({{1, 2, 3}}));
  EXPECT_FALSE(is_admissible_triple({{1, 1, 1}}));
  const Verdict v = admissibility({{1, 3, 5}});
  EXPECT_FALSE(v.value);
  EXPECT_EQ(v.reason, "gcd(p1-p2, p1-p3) = 2");
  EXPECT_EQ(admissibility({{2, 3, 4}}).reason, "gcd(p1,p3) = 2");
  EXPECT_EQ(admissibility({{3, 2, 1}}).reason, "not 0 < p1 < p2 < p3");
  for (Int k = 1; k <= 50; ++k) EXPECT_TRUE(is_admissible_triple({{2 * k - 1, 2 * k, 2 * k + 1}}));
}

TEST(Admissibility, MatchesBruteForceOracle) {
  for (Int a = -3; a <= 12; ++a)
    for (Int b = -3; b <= 12; ++b)
      for (Int c = -3; c <= 12; ++c) {
        ASSERT_EQ(is_admissible_triple({{a, b, c}}), oracle::admissible(a, b, c)) << a << b << c;
        ASSERT_EQ(satisfies_gcd_conditions({{a, b, c}}).value, oracle::gcd_conditions(a, b, c));
      }
}

TEST(Admissibility, NormalizationPreservesGcdConditions) {
  for (Int a = -9; a <= 9; ++a)
    for (Int b = -9; b <= 9; ++b)
      for (Int c = -9; c <= 9; ++c) {
        const WeightTriple n = normalize_weights({{a, b, c}});
        EXPECT_LE(n[0], n[1]);
        EXPECT_LE(n[1], n[2]);
        EXPECT_EQ(satisfies_gcd_conditions({{a, b, c}}).value, satisfies_gcd_conditions(n).value);
      }
}

TEST(Enumeration, TriplesMatchOracle) {
  std::vector<WeightTriple> ref;
  for (Int a = 1; a <= 25; ++a)
    for (Int b = a + 1; b <= 25; ++b)
      for (Int c = b + 1; c <= 25; ++c)
        if (oracle::admissible(a, b, c)) ref.push_back({{a, b, c}});
  EXPECT_EQ(enumerate_admissible_triples(25), ref);
  EXPECT_THROW(enumerate_admissible_triples(2), Error);
}

TEST(Quad, Examples) {
  EXPECT_TRUE(is_free_quadruple({{0, 1, 2, 3}}));
  const Verdict v = quad_freeness({{1, 2, 3, 4}});
  EXPECT_FALSE(v.value);
  EXPECT_NE(v.reason.find("(1,2,4)"), std::string::npos);
}

TEST(Quad, MatchesBruteForceOracle) {
  std::vector<WeightQuad> ref;
  for (Int a = 0; a <= 12; ++a)
    for (Int b = a + 1; b <= 12; ++b)
      for (Int c = b + 1; c <= 12; ++c)
        for (Int d = c + 1; d <= 12; ++d) {
          ASSERT_EQ(is_free_quadruple({{a, b, c, d}}), oracle::free_quad(a, b, c, d));
          if (oracle::free_quad(a, b, c, d)) ref.push_back({{a, b, c, d}});
        }
  EXPECT_EQ(enumerate_free_quadruples(12), ref);
}

TEST(Parity, NoQuadrupleOfAdmissibleTriples) {
  const ParityReport r = verify_parity_obstruction(20);
  EXPECT_TRUE(r.holds());
  EXPECT_FALSE(r.counterexample.has_value());
  EXPECT_GT(r.admissible_triples, 0u);
}

TEST(Parity, EveryAdmissibleTripleHasOneEvenEntry) {
  for (const auto& t : enumerate_admissible_triples(40)) {
    const int even = (t[0] % 2 == 0) + (t[1] % 2 == 0) + (t[2] % 2 == 0);
    EXPECT_EQ(even, 1);
  }
}

namespace {

const WeightMatrix kTheta1{{1, 0, 1}, {0, 1, 1}};
const WeightMatrix kTheta2{{9, 2, 7}, {40, 9, 31}};

WeightMatrix random_theta(CounterRng& rng, Int r) {
  WeightMatrix t;
  for (auto& x : t.p) x = rng.uniform_int(-r, r);
  for (auto& x : t.q) x = rng.uniform_int(-r, r);
  return t;
}

}  // namespace

TEST(Theta, MinorsAndBoxesOfTheta1) {
  EXPECT_EQ(minor_determinants(kTheta1), (MinorTriple{1, 1, -1}));
  EXPECT_EQ(box_determinants(kTheta1).v, (std::array<Int, 4>{-1, 3, -1, -1}));
  EXPECT_TRUE(theta_locally_free(kTheta1).value);
  EXPECT_EQ(singular_group_orders(kTheta1), (std::array<std::uint64_t, 4>{1, 3, 1, 1}));
}

TEST(Theta, Theta2HasUnitMinorsAndAThreeBox) {
  EXPECT_EQ(minor_determinants(kTheta2), (MinorTriple{1, -1, -1}));
  const auto orders = singular_group_orders(kTheta2);
  EXPECT_NE(std::find(orders.begin(), orders.end(), 3u), orders.end());
}

TEST(Theta, NotLocallyFreeReason) {
  const Verdict v = theta_locally_free({{1, 0, 1}, {0, 1, 2}});
  EXPECT_FALSE(v.value);
  EXPECT_EQ(v.reason, "d12 = d13 + d23");
  EXPECT_THROW(singular_group_orders({{1, 0, 1}, {0, 1, 2}}), Error);
}

TEST(Theta, BoxesAgainstHandDeterminants) {
  CounterRng rng(3);
  for (int n = 0; n < 500; ++n) {
    const WeightMatrix t = random_theta(rng, 20);
    const BoxQuad b = box_determinants(t);
    // "--", "+-", "-+", "++": (row p1 -+ p2 sign, row p1 -+ p3 sign)
    const int s2[4] = {-1, -1, +1, +1};
    const int s3[4] = {-1, +1, -1, +1};
    for (int k = 0; k < 4; ++k) {
      const Int ref = oracle::det2(t.p[0] + s2[k] * t.p[1], t.q[0] + s2[k] * t.q[1],
                                   t.p[0] + s3[k] * t.p[2], t.q[0] + s3[k] * t.q[2]);
      EXPECT_EQ(b[k], ref);
    }
    EXPECT_TRUE(verify_box_identity(t));
    EXPECT_EQ(boxes_from_minors(minor_determinants(t)), b);
  }
}

TEST(Theta, RowTransformCovariance) {
  CounterRng rng(4);
  const std::array<std::array<std::array<Int, 2>, 2>, 4> us = {{
      {{{1, 0}, {0, 1}}}, {{{0, 1}, {1, 0}}}, {{{1, 1}, {0, 1}}}, {{{2, 1}, {1, 1}}}}};
  for (int n = 0; n < 200; ++n) {
    const WeightMatrix t = random_theta(rng, 9);
    for (const auto& u : us) {
      const Int det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
      const WeightMatrix s = apply_row_transform(u, t);
      const MinorTriple a = minor_determinants(t), b = minor_determinants(s);
      EXPECT_EQ(b.d12, det * a.d12);
      EXPECT_EQ(b.d13, det * a.d13);
      EXPECT_EQ(b.d23, det * a.d23);
      for (int k = 0; k < 4; ++k) EXPECT_EQ(box_determinants(s)[k], det * box_determinants(t)[k]);
      EXPECT_EQ(theta_locally_free(s).value, theta_locally_free(t).value);
    }
  }
}

TEST(Theta, ObstructionEveryAssignmentHasExactlyOneThree) {
  const ObstructionReport r = theta_smoothness_obstruction();
  ASSERT_EQ(r.rows.size(), 8u);
  EXPECT_TRUE(r.holds());
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.count_pm3, 1);
    EXPECT_EQ(row.count_pm1, 3);
    Int pm3 = 0;
    for (Int b : row.boxes.v) pm3 += std::llabs(b) == 3;
    EXPECT_EQ(pm3, 1);
  }
  EXPECT_FALSE(r.two_or_more_pm3_everywhere);
}

TEST(Isotropy, CircleOrderMatchesRootOfUnityEnumeration) {
  for (Int a = -12; a <= 12; ++a)
    for (Int b = -12; b <= 12; ++b) {
      const IsotropyOrder o = circle_isotropy_order({a, b});
      if (a == 0 && b == 0) {
        EXPECT_TRUE(o.infinite);
        continue;
      }
      EXPECT_FALSE(o.infinite);
      EXPECT_EQ(static_cast<Int>(o.order), oracle::circle_count({a, b}, 27720)) << a << "," << b;
    }
}

TEST(Isotropy, TorusOrderMatchesRootOfUnityEnumeration) {
  CounterRng rng(5);
  for (int n = 0; n < 300; ++n) {
    IntMatrix2 e;
    for (auto& row : e)
      for (auto& x : row) x = rng.uniform_int(-7, 7);
    const Int det = e[0][0] * e[1][1] - e[0][1] * e[1][0];
    const IsotropyOrder o = torus_isotropy_order(e);
    if (det == 0) {
      EXPECT_TRUE(o.infinite);
      continue;
    }
    EXPECT_EQ(static_cast<Int>(o.order), oracle::torus_count(e));
    EXPECT_EQ(static_cast<Int>(o.order), std::llabs(det));
    const auto d = smith_diagonal(e);
    EXPECT_EQ(std::llabs(d[0] * d[1]), std::llabs(det));
    if (d[0] != 0) EXPECT_EQ(d[1] % d[0], 0);
  }
}

TEST(Isotropy, SingularOrdersAgreeWithFixedPointSystems) {
  CounterRng rng(6);
  for (int n = 0; n < 300; ++n) {
    const WeightMatrix t = random_theta(rng, 6);
    if (!theta_locally_free(t)) continue;
    const auto orders = singular_group_orders(t);
    const auto systems = singular_fixed_point_systems(t);
    for (int k = 0; k < 4; ++k) {
      const IsotropyOrder o = torus_isotropy_order(systems[k]);
      ASSERT_FALSE(o.infinite);
      EXPECT_EQ(o.order, orders[k]);
      EXPECT_EQ(static_cast<Int>(orders[k]), std::llabs(box_determinants(t)[k]));
    }
  }
}
