#include <algorithm>
#include <cmath>

#include "hkq/convention_io.hpp"
#include "hkq/errors.hpp"
#include "hkq/report_json.hpp"
#include "hkq/rng.hpp"
#include "hkq/verify.hpp"
#include "internal.hpp"

namespace hkq {

using nlohmann::json;

bool SuiteReport::passed() const {
  return std::all_of(criteria.begin(), criteria.end(),
                     [](const CriterionResult& c) { return c.passed; });
}

namespace {

// Trial division; shares no code with the predicates it cross-checks.
bool share_divisor(Int a, Int b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  if (a == 0 && b == 0) return true;
  if (a == 0) return b != 1;
  if (b == 0) return a != 1;
  for (Int d = 2; d <= std::min(a, b); ++d)
    if (a % d == 0 && b % d == 0) return true;
  return false;
}

bool share_divisor3(Int a, Int b, Int c) {
  const Int m = std::max({std::abs(a), std::abs(b), std::abs(c)});
  for (Int d = 2; d <= m; ++d)
    if (a % d == 0 && b % d == 0 && c % d == 0) return true;
  return m != 1 && a == 0 && b == 0 && c == 0;
}

bool oracle_gcd_conditions(Int a, Int b, Int c) {
  if (share_divisor(a, b) || share_divisor(a, c) || share_divisor(b, c)) return false;
  for (Int s : {1, -1})
    for (Int t : {1, -1})
      if (share_divisor(a + s * b, a + t * c)) return false;
  return true;
}

bool oracle_triple(Int a, Int b, Int c) {
  return 0 < a && a < b && b < c && oracle_gcd_conditions(a, b, c);
}

bool oracle_quad(const std::array<Int, 4>& p) {
  if (!(0 <= p[0] && p[0] < p[1] && p[1] < p[2] && p[2] < p[3])) return false;
  static constexpr int sub[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  for (const auto& s : sub) {
    const Int a = p[s[0]], b = p[s[1]], c = p[s[2]];
    if (share_divisor3(a, b, c)) return false;
    for (Int x : {1, -1})
      for (Int y : {1, -1})
        if (share_divisor(a + x * b, a + y * c)) return false;
  }
  return true;
}

SamplingOptions sampling(const SuiteOptions& o) {
  SamplingOptions s;
  s.count = o.count;
  s.seed = o.seed;
  s.threads = o.threads;
  s.tolerances.rank_relative = o.rank_relative;
  return s;
}

const WeightMatrix kTheta1{{1, 0, 1}, {0, 1, 1}};

CriterionResult criterion_identity(const SuiteOptions& o) {
  CriterionResult r{1, "box determinant identity", false, {}};
  CounterRng rng(stream_seed(o.seed, 1));
  int failures = 0;
  const int draws = 1000;
  for (int n = 0; n < draws; ++n) {
    WeightMatrix t;
    for (auto& x : t.p) x = rng.uniform_int(-20, 20);
    for (auto& x : t.q) x = rng.uniform_int(-20, 20);
    if (!verify_box_identity(t)) ++failures;
  }
  r.passed = failures == 0;
  r.detail = {{"draws", draws}, {"failures", failures}};
  return r;
}

CriterionResult criterion_obstruction(const SuiteOptions&) {
  CriterionResult r{2, "theta smoothness obstruction", false, {}};
  const ObstructionReport rep = theta_smoothness_obstruction();
  r.passed = rep.holds();
  r.detail = to_json(rep);
  if (!rep.two_or_more_pm3_everywhere)
    r.detail["flag"] =
        "each assignment has exactly " + std::to_string(rep.min_count_pm3) +
        " box(es) equal to +-3, not two or more";
  return r;
}

CriterionResult criterion_admissibility(const SuiteOptions& o) {
  CriterionResult r{3, "admissible triples", false, {}};
  bool family = true;
  std::vector<int> family_failures;
  for (Int k = 1; k <= 50; ++k) {
    if (!is_admissible_triple({{2 * k - 1, 2 * k, 2 * k + 1}})) {
      family = false;
      family_failures.push_back(static_cast<int>(k));
    }
  }
  const bool rejects = !is_admissible_triple({{1, 1, 1}}) && !is_admissible_triple({{1, 3, 5}});
  const auto listed = enumerate_admissible_triples(o.bound);
  std::vector<WeightTriple> oracle;
  for (Int a = 1; a <= o.bound; ++a)
    for (Int b = a + 1; b <= o.bound; ++b)
      for (Int c = b + 1; c <= o.bound; ++c)
        if (oracle_triple(a, b, c)) oracle.push_back({{a, b, c}});
  const bool match = listed == oracle;
  r.passed = family && rejects && match;
  r.detail = {{"family_2k-1_2k_2k+1_k_to_50", family},
              {"family_failures", family_failures},
              {"rejects_1_1_1_and_1_3_5", rejects},
              {"bound", o.bound},
              {"enumerated", listed.size()},
              {"oracle", oracle.size()},
              {"oracle_match", match}};
  return r;
}

CriterionResult criterion_parity(const SuiteOptions& o) {
  CriterionResult r{4, "parity obstruction", false, {}};
  const ParityReport quads = verify_parity_obstruction(o.bound);
  const ParityReport triples = verify_parity_obstruction(101);
  r.passed = !quads.counterexample && triples.every_admissible_triple_has_one_even;
  r.detail = {{"quadruples", to_json(quads)}, {"triples_to_101", to_json(triples)}};
  return r;
}

CriterionResult criterion_quad(const SuiteOptions&) {
  CriterionResult r{5, "quadruple freeness", false, {}};
  const Verdict a = quad_freeness({{0, 1, 2, 3}});
  const Verdict b = quad_freeness({{1, 2, 3, 4}});
  const bool witness = !b.value && b.reason.find("(1,2,4)") != std::string::npos;
  const Int bound = 15;
  int mismatches = 0, checked = 0;
  for (Int p1 = 0; p1 <= bound; ++p1)
    for (Int p2 = p1 + 1; p2 <= bound; ++p2)
      for (Int p3 = p2 + 1; p3 <= bound; ++p3)
        for (Int p4 = p3 + 1; p4 <= bound; ++p4) {
          ++checked;
          if (is_free_quadruple({{p1, p2, p3, p4}}) != oracle_quad({p1, p2, p3, p4})) ++mismatches;
        }
  r.passed = a.value && witness && mismatches == 0;
  r.detail = {{"0,1,2,3", a.value},
              {"1,2,3,4", b.value},
              {"1,2,3,4_reason", b.reason},
              {"oracle_bound", bound},
              {"oracle_checked", checked},
              {"oracle_mismatches", mismatches}};
  return r;
}

struct FamilyRun {
  LevelSetSpec spec;
  std::vector<SamplePoint> points;
  int attempted = 0;
};

std::vector<FamilyRun> regular_families(const SuiteOptions& o) {
  std::vector<FamilyRun> runs;
  Tolerances tol;
  tol.rank_relative = o.rank_relative;
  for (auto spec : {LevelSetSpec::triple({{1, 2, 3}}, tol), LevelSetSpec::quad({{0, 1, 2, 3}}, tol),
                    LevelSetSpec::theta(kTheta1, tol)}) {
    FamilyRun run{spec, {}, o.count};
    try {
      run.points = sample_level_set(spec, o.count, o.seed, o.threads).points;
    } catch (const Error&) {
    }
    runs.push_back(std::move(run));
  }
  return runs;
}

CriterionResult criterion_regular(const SuiteOptions& o) {
  CriterionResult r{6, "regular values", true, json::array()};
  for (const auto& run : regular_families(o)) {
    double worst = 0.0;
    for (const auto& pt : run.points) worst = std::max(worst, pt.residual);
    const auto cert = smoothness_certificate(run.points, run.spec);
    const bool ok = static_cast<int>(run.points.size()) == run.attempted && worst < 1e-10 &&
                    cert.passed;
    r.passed = r.passed && ok;
    r.detail.push_back({{"family", to_string(run.spec.family())},
                        {"weights", run.spec.weights_string()},
                        {"converged", run.points.size()},
                        {"attempted", run.attempted},
                        {"max_residual", worst},
                        {"expected_rank", run.spec.constraint_count()},
                        {"expected_nullity", run.spec.level_set_dim()},
                        {"certificate", to_json(cert)},
                        {"passed", ok}});
  }
  return r;
}

CriterionResult criterion_freeness(const SuiteOptions& o) {
  CriterionResult r{7, "freeness and singular stratum", false, {}};
  SamplingOptions so = sampling(o);
  so.vertex_scan = false;
  const auto free = verify_triple({{1, 2, 3}}, so);
  bool killing = false;
  json kd;
  for (const auto& c : free.certificates)
    if (c.name == "freeness") {
      killing = c.passed && c.samples == static_cast<std::size_t>(o.count);
      kd = to_json(c);
    }
  const auto spec = LevelSetSpec::triple({{1, 1, 1}});
  json sd = json::object();
  bool stratum = false;
  try {
    const QuaternionVector u = singular_stratum_point(o.seed);
    const double res = constraint_residual(u, spec).norm();
    std::vector<double> angles{0.3, 1.0, 2.5}, disp;
    bool fixed = true;
    for (double t : angles) {
      disp.push_back((action_apply(u, singular_isotropy_element(t), spec) - u).norm());
      fixed = fixed && disp.back() < 1e-10;
    }
    const int rank = numerical_rank(killing_fields(u, spec), o.rank_relative).rank;
    stratum = res < 1e-10 && fixed && rank == 3;
    sd = {{"residual", res}, {"test_angles", angles}, {"displacements", disp},
          {"killing_rank", rank}, {"verified", stratum}};
  } catch (const Error& e) {
    sd = {{"error", e.what()}};
  }
  r.passed = killing && stratum;
  r.detail = {{"killing_1_2_3", kd}, {"singular_stratum_1_1_1", sd}};
  return r;
}

CriterionResult criterion_vertices(const SuiteOptions& o) {
  CriterionResult r{8, "vertex supports", false, {}};
  const auto spec = LevelSetSpec::triple({{1, 2, 3}});
  const auto scan = vertex_support_scan(spec, spec.tolerances().convergence, 20, o.seed);
  bool witnesses = true;
  for (const auto& pr : scan.patterns)
    if (pr.predicted) witnesses = witnesses && pr.explicit_witness_residual >= 0.0 &&
                                  pr.explicit_witness_residual <= 1e-12;
  r.passed = scan.matches_prediction && witnesses && scan.feasible == 8 && scan.infeasible == 27;
  r.detail = to_json(scan);
  r.detail["explicit_witnesses_within_1e-12"] = witnesses;
  return r;
}

CriterionResult criterion_octonions(const SuiteOptions& o) {
  CriterionResult r{9, "octonionic nu", false, {}};
  const auto a = calibrate_convention(1000, o.seed);
  const auto b = calibrate_convention(1000, o.seed + 1);
  const bool deterministic = a.convention == b.convention;
  const auto pts = detail::random_points7(1000, stream_seed(o.seed, 9));
  const double dev = detail::nu_deviation(a.convention, pts, 1.0);
  r.passed = deterministic && dev <= 1e-10;
  r.detail = {{"candidates_tested", a.candidates_tested},
              {"norm_composing_tables", a.norm_composing_tables},
              {"matching_candidates", a.matching_candidates},
              {"convention", convention_to_json(a.convention)},
              {"deterministic_across_seeds", deterministic},
              {"points", pts.size()},
              {"max_deviation", dev}};
  return r;
}

CriterionResult criterion_coassociative(const SuiteOptions& o) {
  CriterionResult r{10, "co-associativity", false, {}};
  SamplingOptions so = sampling(o);
  so.vertex_scan = false;
  const auto rep = verify_triple({{1, 1, 1}}, so);
  if (!rep.coassociativity) {
    r.detail = {{"error", "no samples"}};
    return r;
  }
  const auto& co = *rep.coassociativity;
  const std::size_t needed = (co.contrast.samples * 95 + 99) / 100;
  const bool pointwise = co.level_set.pointwise_passed && co.level_set.samples == static_cast<std::size_t>(o.count);
  const bool contrast = co.contrast_departures >= needed;
  r.passed = pointwise && contrast;
  r.detail = {{"level_set", to_json(co.level_set)},
              {"contrast", to_json(co.contrast)},
              {"contrast_departures", co.contrast_departures},
              {"contrast_orbit_departures", co.contrast_orbit_departures},
              {"contrast_departures_required", needed},
              {"pointwise_passed", pointwise},
              {"orbit_passed", co.level_set.orbit_passed}};
  return r;
}

CriterionResult criterion_dimensions(const SuiteOptions& o) {
  CriterionResult r{11, "dimension accounting", true, json::array()};
  for (const auto& run : regular_families(o)) {
    const auto d = dimension_report(run.spec, &run.points);
    const bool ok = d.chain_holds && d.observed_nullity.has_value();
    r.passed = r.passed && ok;
    json j = to_json(d);
    j["family"] = to_string(run.spec.family());
    j["weights"] = run.spec.weights_string();
    r.detail.push_back(j);
  }
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, const SuiteOptions& o) {
  switch (id) {
    case 1: return criterion_identity(o);
    case 2: return criterion_obstruction(o);
    case 3: return criterion_admissibility(o);
    case 4: return criterion_parity(o);
    case 5: return criterion_quad(o);
    case 6: return criterion_regular(o);
    case 7: return criterion_freeness(o);
    case 8: return criterion_vertices(o);
    case 9: return criterion_octonions(o);
    case 10: return criterion_coassociative(o);
    case 11: return criterion_dimensions(o);
    default: throw Error(ErrorKind::InvalidArgument, "criterion id must be in 1..11");
  }
}

SuiteReport run_acceptance_suite(const SuiteOptions& opts) {
  SuiteReport rep;
  rep.options = opts;
  const int last = opts.enumeration_only ? 5 : 11;
  for (int id = 1; id <= last; ++id) rep.criteria.push_back(run_criterion(id, opts));
  return rep;
}

}  // namespace hkq
