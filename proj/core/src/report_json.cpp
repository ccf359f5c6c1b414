#include "hkq/report_json.hpp"

#include "hkq/errors.hpp"

namespace hkq {

using nlohmann::json;

json to_json(const QuaternionVector& u) {
  json a = json::array();
  for (const auto& q : u.entries())
    for (int c = 0; c < 4; ++c) a.push_back(q[c]);
  return a;
}

QuaternionVector quaternion_vector_from_json(const json& j) {
  if (!j.is_array() || j.size() % 4 != 0)
    throw Error(ErrorKind::DimensionMismatch, "quaternion vector needs a multiple of 4 entries");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return QuaternionVector::from_real(v);
}

json to_json(const SamplePoint& pt) {
  return {{"seed", pt.seed},
          {"u", to_json(pt.u)},
          {"residual", pt.residual},
          {"jacobian_rank", pt.jacobian_rank},
          {"killing_rank", pt.killing_rank},
          {"min_sv_constraints", pt.min_sv_constraints},
          {"min_sv_killing", pt.min_sv_killing}};
}

json to_json(const std::vector<SamplePoint>& samples) {
  json a = json::array();
  for (const auto& pt : samples) a.push_back(to_json(pt));
  return a;
}

std::vector<SamplePoint> samples_from_json(const json& j) {
  const json& arr = j.is_object() ? j.at("samples") : j;
  if (!arr.is_array()) throw Error(ErrorKind::Io, "samples must be an array");
  std::vector<SamplePoint> out;
  out.reserve(arr.size());
  for (const auto& e : arr) {
    SamplePoint pt;
    pt.seed = e.at("seed").get<std::uint64_t>();
    pt.u = quaternion_vector_from_json(e.at("u"));
    pt.residual = e.at("residual").get<double>();
    pt.jacobian_rank = e.at("jacobian_rank").get<int>();
    pt.killing_rank = e.at("killing_rank").get<int>();
    pt.min_sv_constraints = e.at("min_sv_constraints").get<double>();
    pt.min_sv_killing = e.at("min_sv_killing").get<double>();
    out.push_back(std::move(pt));
  }
  return out;
}

json to_json(const MinorTriple& m) { return {{"d12", m.d12}, {"d13", m.d13}, {"d23", m.d23}}; }

json to_json(const BoxQuad& b) {
  json o = json::object();
  for (int k = 0; k < 4; ++k) o[BoxQuad::kLabels[k]] = b[k];
  return o;
}

json to_json(const ObstructionReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"d12", row.minors[0]},
                    {"d23", row.minors[1]},
                    {"d13", row.minors[2]},
                    {"boxes", to_json(row.boxes)},
                    {"count_pm3", row.count_pm3},
                    {"count_pm1", row.count_pm1}});
  return {{"rows", rows},
          {"every_row_has_pm3", r.every_row_has_pm3},
          {"some_row_all_pm1", r.some_row_all_pm1},
          {"min_count_pm3", r.min_count_pm3},
          {"max_count_pm3", r.max_count_pm3},
          {"two_or_more_pm3_everywhere", r.two_or_more_pm3_everywhere},
          {"holds", r.holds()}};
}

json to_json(const ParityReport& r) {
  json ce = nullptr;
  if (r.counterexample) ce = r.counterexample->p;
  return {{"bound", r.bound},
          {"quadruples_checked", r.quadruples_checked},
          {"counterexample", ce},
          {"admissible_triples", r.admissible_triples},
          {"every_admissible_triple_has_one_even", r.every_admissible_triple_has_one_even},
          {"holds", r.holds()}};
}

json to_json(const CertificateReport& c) {
  json off = json::array();
  for (const auto& o : c.offenders)
    off.push_back({{"index", o.index}, {"u", to_json(o.u)}, {"detail", o.detail}});
  return {{"name", c.name},
          {"passed", c.passed},
          {"samples", c.samples},
          {"expected", c.expected},
          {"min_margin", c.min_margin},
          {"median_margin", c.median_margin},
          {"observed", c.observed},
          {"offenders", off},
          {"notes", c.notes}};
}

json to_json(const DimensionTable& d) {
  json nullity = nullptr;
  if (d.observed_nullity) nullity = *d.observed_nullity;
  return {{"ambient_sphere_dim", d.ambient_sphere_dim},
          {"constraint_count", d.constraint_count},
          {"level_set_dim", d.level_set_dim},
          {"group_dim", d.group_dim},
          {"quotient_dim", d.quotient_dim},
          {"observed_nullity", nullity},
          {"chain_holds", d.chain_holds}};
}

json to_json(const VertexScanReport& v) {
  json pats = json::array();
  for (const auto& p : v.patterns) {
    json w = nullptr;
    if (p.witness) w = to_json(*p.witness);
    json e = nullptr;
    if (p.explicit_witness_residual >= 0.0) e = p.explicit_witness_residual;
    pats.push_back({{"support", to_string(p.pattern)},
                    {"feasibility", to_string(p.feasibility)},
                    {"predicted", p.predicted},
                    {"best_residual", p.best_residual},
                    {"explicit_witness_residual", e},
                    {"frame_determinant_signs", p.frame_determinant_signs},
                    {"witness", w}});
  }
  return {{"patterns", pats},
          {"feasible", v.feasible},
          {"infeasible", v.infeasible},
          {"inconclusive", v.inconclusive},
          {"matches_prediction", v.matches_prediction},
          {"unexpected_feasible", v.unexpected_feasible},
          {"missing_vertices", v.missing_vertices}};
}

json to_json(const CoassociativityReport& c) {
  return {{"samples", c.samples},
          {"values", c.values},
          {"orbit_values", c.orbit_values},
          {"max_pointwise_deficit", c.max_pointwise_deficit},
          {"max_orbit_deficit", c.max_orbit_deficit},
          {"worst_index", c.worst_index},
          {"pointwise_passed", c.pointwise_passed},
          {"orbit_passed", c.orbit_passed}};
}

namespace {

json element_json(const GroupElement& g) {
  return {{"lambda", {g.lambda.w, g.lambda.x, g.lambda.y, g.lambda.z}}, {"angles", g.angles}};
}

json tolerances_json(const Tolerances& t) {
  return {{"convergence", t.convergence},
          {"max_iterations", t.max_iterations},
          {"rank_relative", t.rank_relative},
          {"infeasible", t.infeasible}};
}

}  // namespace

json to_json(const VerificationReport& r) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["library_version"] = std::string(library_version());
  j["family"] = to_string(r.family);
  j["datum"] = r.datum;
  j["seed"] = r.seed;
  j["tolerances"] = tolerances_json(r.tolerances);
  json verdicts = json::object();
  for (const auto& [name, v] : r.verdicts) verdicts[name] = {{"value", v.value}, {"reason", v.reason}};
  j["verdicts"] = verdicts;
  if (r.minors) j["minors"] = to_json(*r.minors);
  if (r.boxes) j["boxes"] = to_json(*r.boxes);
  if (r.box_identity) j["box_identity"] = *r.box_identity;
  if (r.singular_orders) j["singular_orders"] = *r.singular_orders;
  if (r.singular_orders_cross_check) {
    json a = json::array();
    for (const auto& o : *r.singular_orders_cross_check) a.push_back(o.str());
    j["singular_orders_cross_check"] = a;
  }
  if (r.obstruction) j["obstruction"] = to_json(*r.obstruction);
  j["dimensions"] = to_json(r.dimensions);
  if (r.converged_fraction) j["converged_fraction"] = *r.converged_fraction;
  json certs = json::array();
  for (const auto& c : r.certificates) certs.push_back(to_json(c));
  j["certificates"] = certs;
  if (r.strata)
    j["strata"] = {{"s0", r.strata->s0}, {"s1", r.strata->s1}, {"s2", r.strata->s2},
                   {"s3", r.strata->s3}, {"s0_and_s2", r.strata->s0_and_s2}};
  if (r.vertices) j["vertices"] = to_json(*r.vertices);
  if (r.singular_stratum) {
    const auto& s = *r.singular_stratum;
    j["singular_stratum"] = {{"point", to_json(s.point)},
                             {"residual", s.residual},
                             {"test_angles", s.test_angles},
                             {"displacements", s.displacements},
                             {"killing_rank", s.killing_rank},
                             {"verified", s.verified}};
  }
  if (r.coassociativity) {
    const auto& c = *r.coassociativity;
    j["coassociativity"] = {{"level_set", to_json(c.level_set)},
                            {"contrast", to_json(c.contrast)},
                            {"contrast_departures", c.contrast_departures},
                            {"contrast_orbit_departures", c.contrast_orbit_departures}};
  }
  json wit = json::array();
  for (const auto& w : r.witnesses)
    wit.push_back({{"condition", w.condition},
                   {"construction", w.construction},
                   {"element", element_json(w.element)},
                   {"point", to_json(w.point)},
                   {"residual", w.residual},
                   {"displacement", w.displacement},
                   {"verified", w.verified}});
  j["isotropy_witnesses"] = wit;
  j["labels"] = r.labels;
  j["notes"] = r.notes;
  j["passed"] = r.passed();
  return j;
}

json to_json(const SuiteReport& s) {
  json crit = json::array();
  for (const auto& c : s.criteria)
    crit.push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"schema_version", kReportSchemaVersion},
          {"library_version", std::string(library_version())},
          {"options",
           {{"seed", s.options.seed},
            {"bound", s.options.bound},
            {"count", s.options.count},
            {"rank_relative", s.options.rank_relative},
            {"enumeration_only", s.options.enumeration_only}}},
          {"criteria", crit},
          {"passed", s.passed()}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace hkq
