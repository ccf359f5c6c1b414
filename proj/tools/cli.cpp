#include "hkq/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "hkq/convention_io.hpp"
#include "hkq/errors.hpp"
#include "hkq/report_json.hpp"
#include "hkq/verify.hpp"

namespace hkq::cli {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<Int> parse_ints(const std::string& s) {
  std::vector<Int> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const std::string t = trim(item);
    Int x = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size())
      throw UsageError("not an integer list: \"" + s + "\"");
    v.push_back(x);
  }
  if (!s.empty() && s.back() == ',') throw UsageError("not an integer list: \"" + s + "\"");
  return v;
}

std::string join(const std::vector<Int>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

template <std::size_t N>
std::string tuple_str(const std::array<Int, N>& a) {
  return "(" + join(std::vector<Int>(a.begin(), a.end())) + ")";
}

struct Common {
  std::string format;
  std::string out;
  std::uint64_t seed = 42;
  int count = 100;
  Int bound = 30;
  int threads = 0;
  double tol = 1e-12;
  double rank_tol = 1e-6;
  int max_iter = 200;

  Tolerances tolerances() const {
    Tolerances t;
    t.convergence = tol;
    t.rank_relative = rank_tol;
    t.max_iterations = max_iter;
    return t;
  }
};

enum class Format { Json, Csv, Human };

Format resolve_format(const Common& c, Format fallback, bool csv_allowed) {
  if (c.format.empty()) return fallback;
  if (c.format == "json") return Format::Json;
  if (c.format == "human") return Format::Human;
  if (c.format == "csv") {
    if (!csv_allowed) throw UsageError("csv format is not available for this command");
    return Format::Csv;
  }
  throw UsageError("unknown format \"" + c.format + "\"");
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, "cannot open " + c.out + " for writing");
  f << text;
}

std::string yes(bool b) { return b ? "true" : "false"; }

std::string verdict_line(const std::string& name, const Verdict& v) {
  return name + ": " + yes(v.value) + (v.reason.empty() ? "" : " (" + v.reason + ")") + "\n";
}

json verdict_json(const Verdict& v) { return {{"value", v.value}, {"reason", v.reason}}; }

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(3) << std::scientific << x;
  return s.str();
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

int check_triple(const std::string& datum, const Common& c, std::ostream& out) {
  const WeightTriple p = parse_triple(datum);
  const Verdict v = admissibility(p);
  if (resolve_format(c, Format::Human, false) == Format::Json) {
    emit(c, dump({{"command", "check triple"},
                  {"datum", join({p[0], p[1], p[2]})},
                  {"verdicts", {{"admissible", verdict_json(v)}}}}),
         out);
  } else {
    emit(c, "datum: " + join({p[0], p[1], p[2]}) + "\n" + verdict_line("admissible", v), out);
  }
  return v.value ? kExitPass : kExitFinding;
}

int check_quad(const std::string& datum, const Common& c, std::ostream& out) {
  const WeightQuad p = parse_quad(datum);
  const Verdict v = quad_freeness(p);
  const std::string d = join({p[0], p[1], p[2], p[3]});
  if (resolve_format(c, Format::Human, false) == Format::Json) {
    emit(c, dump({{"command", "check quad"}, {"datum", d}, {"verdicts", {{"free", verdict_json(v)}}}}),
         out);
  } else {
    emit(c, "datum: " + d + "\n" + verdict_line("free", v), out);
  }
  return v.value ? kExitPass : kExitFinding;
}

int check_theta(const std::string& datum, const Common& c, std::ostream& out) {
  const WeightMatrix t = parse_theta(datum);
  const MinorTriple m = minor_determinants(t);
  const BoxQuad b = box_determinants(t);
  const bool identity = verify_box_identity(t);
  const Verdict lf = theta_locally_free(t);
  const bool nonzero = m.d12 != 0 && m.d13 != 0 && m.d23 != 0;
  const bool unit = std::abs(m.d12) == 1 && std::abs(m.d13) == 1 && std::abs(m.d23) == 1;
  const Verdict v_nonzero{nonzero, nonzero ? "" : "a minor vanishes"};
  const Verdict v_unit{unit, unit ? "" : "some |minor| != 1"};
  std::optional<std::array<std::uint64_t, 4>> orders;
  Verdict v_free{false, "not locally free"};
  if (lf) {
    orders = singular_group_orders(t);
    bool all_one = unit;
    for (auto o : *orders) all_one = all_one && o == 1;
    v_free = {all_one, all_one ? "" : "some singular order > 1"};
  }
  const std::string d = join({t.p[0], t.p[1], t.p[2]}) + ";" + join({t.q[0], t.q[1], t.q[2]});

  if (resolve_format(c, Format::Human, false) == Format::Json) {
    json j = {{"command", "check theta"},
              {"datum", d},
              {"minors", to_json(m)},
              {"boxes", to_json(b)},
              {"box_identity", identity},
              {"verdicts",
               {{"locally_free", verdict_json(lf)},
                {"locally_free_on_u1_nonzero", verdict_json(v_nonzero)},
                {"free_on_u1_nonzero", verdict_json(v_unit)},
                {"free", verdict_json(v_free)}}}};
    j["singular_orders"] = orders ? json(*orders) : json(nullptr);
    emit(c, dump(j), out);
  } else {
    std::string s = "datum: " + d + "\n";
    s += "minors (d12,d13,d23): " + tuple_str(std::array<Int, 3>{m.d12, m.d13, m.d23}) + "\n";
    s += "boxes (--,+-,-+,++): " + tuple_str(b.v) + "\n";
    s += "box_identity: " + yes(identity) + "\n";
    s += verdict_line("locally_free", lf);
    s += verdict_line("locally_free_on_u1_nonzero", v_nonzero);
    s += verdict_line("free_on_u1_nonzero", v_unit);
    s += verdict_line("free", v_free);
    if (orders) {
      std::vector<Int> o(orders->begin(), orders->end());
      s += "singular_orders: (" + join(o) + ")\n";
    }
    emit(c, s, out);
  }
  return lf.value ? kExitPass : kExitFinding;
}

// ---------------------------------------------------------------------------
// enumerate, obstruction
// ---------------------------------------------------------------------------

template <class Tuple>
int enumerate_tuples(const std::vector<Tuple>& tuples, const char* predicate,
                     const std::vector<std::string>& columns, const Common& c, std::ostream& out) {
  const Format f = resolve_format(c, Format::Csv, true);
  std::string s;
  if (f == Format::Json) {
    json a = json::array();
    for (const auto& t : tuples) a.push_back(t.p);
    s = dump({{"predicate", predicate}, {"bound", c.bound}, {"count", tuples.size()}, {"tuples", a}});
  } else if (f == Format::Csv) {
    s = std::string("# predicate=") + predicate + " bound=" + std::to_string(c.bound) + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + columns[i];
    s += "\n";
    for (const auto& t : tuples)
      s += join(std::vector<Int>(t.p.begin(), t.p.end())) + "\n";
  } else {
    s = std::string(predicate) + " with entries <= " + std::to_string(c.bound) + ": " +
        std::to_string(tuples.size()) + "\n";
    for (const auto& t : tuples) s += tuple_str(t.p) + "\n";
  }
  emit(c, s, out);
  return kExitPass;
}

int obstruction(const Common& c, std::ostream& out) {
  const ObstructionReport r = theta_smoothness_obstruction();
  const Format f = resolve_format(c, Format::Human, true);
  std::string s;
  if (f == Format::Json) {
    s = dump(to_json(r));
  } else if (f == Format::Csv) {
    s = "# predicate=theta_smoothness_obstruction\nd12,d23,d13,--,+-,-+,++,count_pm3,count_pm1\n";
    for (const auto& row : r.rows)
      s += join({row.minors[0], row.minors[1], row.minors[2]}) + "," + join({row.boxes.v.begin(), row.boxes.v.end()}) +
           "," + std::to_string(row.count_pm3) + "," + std::to_string(row.count_pm1) + "\n";
  } else {
    std::ostringstream o;
    o << " d12 d23 d13 |  --  +-  -+  ++ | #3 #1\n";
    for (const auto& row : r.rows) {
      for (Int x : row.minors) o << std::setw(4) << x;
      o << " |";
      for (Int x : row.boxes.v) o << std::setw(4) << x;
      o << " |" << std::setw(3) << row.count_pm3 << std::setw(3) << row.count_pm1 << "\n";
    }
    o << "every_row_has_pm3: " << yes(r.every_row_has_pm3) << "\n";
    o << "some_row_all_pm1: " << yes(r.some_row_all_pm1) << "\n";
    o << "boxes equal to +-3 per assignment: min " << r.min_count_pm3 << ", max "
      << r.max_count_pm3 << "\n";
    o << "two_or_more_pm3_everywhere: " << yes(r.two_or_more_pm3_everywhere) << "\n";
    o << "holds: " << yes(r.holds()) << "\n";
    s = o.str();
  }
  emit(c, s, out);
  return r.holds() ? kExitPass : kExitFinding;
}

// ---------------------------------------------------------------------------
// sample, validate
// ---------------------------------------------------------------------------

LevelSetSpec make_spec(Family fam, const std::string& weights, const Tolerances& tol) {
  switch (fam) {
    case Family::Triple: return LevelSetSpec::triple(parse_triple(weights), tol);
    case Family::Quad: return LevelSetSpec::quad(parse_quad(weights), tol);
    case Family::Theta: return LevelSetSpec::theta(parse_theta(weights), tol);
    case Family::Stiefel: return LevelSetSpec::stiefel(tol);
  }
  throw UsageError("unknown family");
}

Family parse_family(const std::string& s) {
  try {
    return family_from_string(s);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

int sample(const std::string& family, const std::string& weights, const Common& c,
           std::ostream& out) {
  const Family fam = parse_family(family);
  if (fam != Family::Stiefel && weights.empty()) throw UsageError("--weights is required");
  const LevelSetSpec spec = make_spec(fam, weights, c.tolerances());
  const Format f = resolve_format(c, Format::Json, true);
  SampleSet set;
  try {
    set = sample_level_set(spec, c.count, c.seed, c.threads);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::AllDiverged) throw;
    set.attempted = c.count;
  }
  std::string s;
  if (f == Format::Json) {
    s = dump({{"schema_version", kReportSchemaVersion},
              {"library_version", std::string(library_version())},
              {"family", to_string(fam)},
              {"weights", spec.weights_string()},
              {"seed", c.seed},
              {"count", c.count},
              {"attempted", set.attempted},
              {"converged_fraction", set.converged_fraction()},
              {"tolerances",
               {{"convergence", c.tol}, {"rank_relative", c.rank_tol}, {"max_iterations", c.max_iter}}},
              {"samples", to_json(set.points)}});
  } else if (f == Format::Csv) {
    std::ostringstream o;
    o << "# family=" << to_string(fam) << " weights=" << spec.weights_string() << " seed=" << c.seed
      << " count=" << c.count << "\n";
    o << "seed,residual,jacobian_rank,killing_rank";
    for (int k = 0; k < spec.ambient_real_dim(); ++k) o << ",x" << k;
    o << "\n" << std::setprecision(17);
    for (const auto& pt : set.points) {
      o << pt.seed << "," << pt.residual << "," << pt.jacobian_rank << "," << pt.killing_rank;
      const Eigen::VectorXd x = pt.u.to_real();
      for (Eigen::Index k = 0; k < x.size(); ++k) o << "," << x[k];
      o << "\n";
    }
    s = o.str();
  } else {
    double worst = 0.0;
    for (const auto& pt : set.points) worst = std::max(worst, pt.residual);
    std::ostringstream o;
    o << "family: " << to_string(fam) << "\nweights: " << spec.weights_string()
      << "\nseed: " << c.seed << "\nconverged: " << set.points.size() << " of " << set.attempted
      << "\nmax residual: " << fmt(worst) << "\n";
    s = o.str();
  }
  emit(c, s, out);
  return set.points.size() == static_cast<std::size_t>(set.attempted) ? kExitPass : kExitFinding;
}

int validate(const std::string& path, double tol, std::ostream& out) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::Io, "cannot open " + path);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Io, std::string("malformed sample file: ") + e.what());
  }
  const Family fam = family_from_string(doc.at("family").get<std::string>());
  const std::string weights = doc.at("weights").get<std::string>();
  const LevelSetSpec spec = make_spec(fam, weights == "-" ? "" : weights, {});
  const auto samples = samples_from_json(doc);
  double worst = 0.0;
  for (const auto& pt : samples)
    worst = std::max(worst, std::abs(constraint_residual(pt.u, spec).norm() - pt.residual));
  const bool ok = worst <= tol;
  out << "samples: " << samples.size() << "\nmax residual discrepancy: " << fmt(worst)
      << "\nvalid: " << yes(ok) << "\n";
  return ok ? kExitPass : kExitFinding;
}

// ---------------------------------------------------------------------------
// certify
// ---------------------------------------------------------------------------

std::string human_report(const VerificationReport& r) {
  std::ostringstream o;
  o << "family: " << to_string(r.family) << "\ndatum: " << r.datum << "\nseed: " << r.seed << "\n";
  for (const auto& [name, v] : r.verdicts) o << verdict_line(name, v);
  if (r.minors)
    o << "minors (d12,d13,d23): "
      << tuple_str(std::array<Int, 3>{r.minors->d12, r.minors->d13, r.minors->d23}) << "\n";
  if (r.boxes) o << "boxes (--,+-,-+,++): " << tuple_str(r.boxes->v) << "\n";
  if (r.singular_orders) {
    std::vector<Int> v(r.singular_orders->begin(), r.singular_orders->end());
    o << "singular_orders: (" << join(v) << ")\n";
  }
  const auto& d = r.dimensions;
  o << "dimensions: sphere " << d.ambient_sphere_dim << " -> level set " << d.level_set_dim
    << " -> quotient " << d.quotient_dim << " (constraints " << d.constraint_count << ", group "
    << d.group_dim << ")";
  if (d.observed_nullity) o << ", observed nullity " << *d.observed_nullity;
  o << ", chain " << (d.chain_holds ? "holds" : "fails") << "\n";
  if (r.converged_fraction) o << "converged fraction: " << *r.converged_fraction << "\n";
  for (const auto& cert : r.certificates)
    o << "certificate " << cert.name << ": " << (cert.passed ? "pass" : "FAIL") << " (" << cert.samples
      << " samples, expected " << cert.expected << ", min margin " << fmt(cert.min_margin) << ")\n";
  if (r.strata)
    o << "strata: S0 " << r.strata->s0 << ", S1 " << r.strata->s1 << ", S2 " << r.strata->s2
      << ", S3 " << r.strata->s3 << ", S0 and S2 " << r.strata->s0_and_s2 << "\n";
  if (r.vertices) {
    o << "vertex scan: " << r.vertices->feasible << " feasible, " << r.vertices->infeasible
      << " infeasible, " << r.vertices->inconclusive << " inconclusive; matches prediction "
      << yes(r.vertices->matches_prediction) << "\n";
    for (const auto& pr : r.vertices->patterns)
      if (pr.feasibility == Feasibility::Feasible) o << "  vertex " << to_string(pr.pattern) << "\n";
  }
  if (r.singular_stratum) {
    const auto& s = *r.singular_stratum;
    o << "singular stratum: residual " << fmt(s.residual) << ", killing rank " << s.killing_rank
      << ", fixed at";
    for (std::size_t i = 0; i < s.test_angles.size(); ++i)
      o << " t=" << s.test_angles[i] << " (" << fmt(s.displacements[i]) << ")";
    o << "; verified " << yes(s.verified) << "\n";
  }
  if (r.coassociativity) {
    const auto& c = *r.coassociativity;
    o << "coassociativity pointwise: " << (c.level_set.pointwise_passed ? "pass" : "FAIL")
      << " (max deficit " << fmt(c.level_set.max_pointwise_deficit) << ")\n";
    o << "coassociativity orbit maximum: " << (c.level_set.orbit_passed ? "pass" : "FAIL")
      << " (max deficit " << fmt(c.level_set.max_orbit_deficit) << ")\n";
    o << "contrast departures: " << c.contrast_departures << " of " << c.contrast.samples << "\n";
  }
  for (const auto& w : r.witnesses)
    o << "witness " << w.condition << ": " << w.construction << "; residual " << fmt(w.residual)
      << ", displacement " << fmt(w.displacement) << ", verified " << yes(w.verified) << "\n";
  for (const auto& l : r.labels) o << "label: " << l << "\n";
  for (const auto& n : r.notes) o << "note: " << n << "\n";
  o << "passed: " << yes(r.passed()) << "\n";
  return o.str();
}

int certify(const std::string& family, const std::string& weights, bool full, const Common& c,
            std::ostream& out) {
  const Family fam = parse_family(family);
  SamplingOptions so;
  so.count = c.count;
  so.seed = c.seed;
  so.threads = c.threads;
  so.tolerances = c.tolerances();
  so.vertex_scan = full;
  so.force_sampling = full;
  VerificationReport r;
  switch (fam) {
    case Family::Triple: r = verify_triple(parse_triple(weights), so); break;
    case Family::Quad: r = verify_quad(parse_quad(weights), so); break;
    case Family::Theta: r = verify_theta(parse_theta(weights), so); break;
    case Family::Stiefel: throw UsageError("certify supports triple, quad and theta");
  }
  const Format f = resolve_format(c, Format::Human, false);
  emit(c, f == Format::Json ? dump(to_json(r)) : human_report(r), out);
  const std::string primary = fam == Family::Triple ? "admissible"
                              : fam == Family::Quad  ? "free"
                                                     : "locally_free";
  bool verdict = false;
  for (const auto& [name, v] : r.verdicts)
    if (name == primary) verdict = v.value;
  return r.passed() && verdict ? kExitPass : kExitFinding;
}

// ---------------------------------------------------------------------------
// calibrate-octonions, suite
// ---------------------------------------------------------------------------

int calibrate(const std::string& path, int samples, const Common& c, std::ostream& out) {
  const CalibrationResult r = calibrate_convention(samples, c.seed);
  write_convention_file(path, r.convention);
  out << "candidates tested: " << r.candidates_tested << "\nnorm-composing tables: "
      << r.norm_composing_tables << "\nmatching conventions: " << r.matching_candidates
      << "\nmax nu deviation: " << fmt(r.max_deviation) << "\nwritten: " << path << "\n";
  return kExitPass;
}

int suite(bool enumeration_only, const Common& c, std::ostream& out) {
  SuiteOptions o;
  o.seed = c.seed;
  o.bound = c.bound;
  o.count = c.count;
  o.threads = c.threads;
  o.rank_relative = c.rank_tol;
  o.enumeration_only = enumeration_only;
  const SuiteReport r = run_acceptance_suite(o);
  if (resolve_format(c, Format::Json, false) == Format::Json) {
    emit(c, dump(to_json(r)), out);
  } else {
    std::ostringstream s;
    s << "seed: " << o.seed << "\nbound: " << o.bound << "\ncount: " << o.count << "\n";
    for (const auto& cr : r.criteria)
      s << (cr.passed ? "PASS " : "FAIL ") << cr.id << " " << cr.title << "\n";
    s << "passed: " << yes(r.passed()) << "\n";
    emit(c, s.str(), out);
  }
  return r.passed() ? kExitPass : kExitFinding;
}

}  // namespace

WeightTriple parse_triple(const std::string& s) {
  const auto v = parse_ints(s);
  if (v.size() != 3) throw UsageError("a triple needs 3 entries: \"" + s + "\"");
  return {{v[0], v[1], v[2]}};
}

WeightQuad parse_quad(const std::string& s) {
  const auto v = parse_ints(s);
  if (v.size() != 4) throw UsageError("a quadruple needs 4 entries: \"" + s + "\"");
  return {{v[0], v[1], v[2], v[3]}};
}

WeightMatrix parse_theta(const std::string& s) {
  const auto semi = s.find(';');
  if (semi == std::string::npos || s.find(';', semi + 1) != std::string::npos)
    throw UsageError("a weight matrix is written \"p1,p2,p3;q1,q2,q3\"");
  const auto p = parse_ints(s.substr(0, semi));
  const auto q = parse_ints(s.substr(semi + 1));
  if (p.size() != 3 || q.size() != 3) throw UsageError("each weight-matrix row needs 3 entries");
  return {{p[0], p[1], p[2]}, {q[0], q[1], q[2]}};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical and exact verification for 3-Sasakian quotient data", "hkq"};
  app.set_version_flag("--version", std::string(library_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  app.add_option("--format", c.format, "json | csv | human")->check(CLI::IsMember({"json", "csv", "human"}));
  app.add_option("--out", c.out, "Output file (default: standard output)");
  app.add_option("--seed", c.seed, "Root seed")->capture_default_str();
  app.add_option("--count", c.count, "Number of samples")->check(CLI::Range(1, 1000000));
  app.add_option("--bound", c.bound, "Enumeration bound")->check(CLI::Range(Int{1}, Int{100000}));
  app.add_option("--threads", c.threads, "Sampling threads (0: available parallelism)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--tol", c.tol, "Projection convergence tolerance")->check(CLI::PositiveNumber);
  app.add_option("--rank-tol", c.rank_tol, "Relative singular-value threshold")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-iter", c.max_iter, "Projection iteration cap")->check(CLI::Range(1, 100000));

  std::function<int()> action;

  auto* check = app.add_subcommand("check", "Exact predicates for a weight datum");
  check->require_subcommand(1);
  std::string datum;
  for (const char* kind : {"triple", "quad", "theta"}) {
    auto* sub = check->add_subcommand(kind, std::string("Check a weight ") + kind);
    sub->add_option("datum", datum, "Weight datum")->required();
    const std::string k = kind;
    sub->callback([&, k] {
      action = [&, k] {
        if (k == "triple") return check_triple(datum, c, out);
        if (k == "quad") return check_quad(datum, c, out);
        return check_theta(datum, c, out);
      };
    });
  }

  auto* enumerate = app.add_subcommand("enumerate", "List weight tuples satisfying a predicate");
  enumerate->require_subcommand(1);
  enumerate->add_subcommand("triples", "Admissible triples")->callback([&] {
    action = [&] {
      return enumerate_tuples(enumerate_admissible_triples(c.bound), "admissible_triple",
                              {"p1", "p2", "p3"}, c, out);
    };
  });
  enumerate->add_subcommand("quads", "Free quadruples")->callback([&] {
    action = [&] {
      return enumerate_tuples(enumerate_free_quadruples(c.bound), "free_quadruple",
                              {"p1", "p2", "p3", "p4"}, c, out);
    };
  });

  auto* obs = app.add_subcommand("obstruction", "Sign-assignment obstruction report");
  obs->require_subcommand(1);
  obs->add_subcommand("theta", "The 8 minor sign assignments")->callback([&] {
    action = [&] { return obstruction(c, out); };
  });

  std::string family, weights;
  auto* samp = app.add_subcommand("sample", "Seeded samples of a level set");
  samp->add_option("--family", family, "triple | quad | theta | stiefel")->required();
  samp->add_option("--weights", weights, "Weight datum");
  samp->callback([&] { action = [&] { return sample(family, weights, c, out); }; });

  bool full = false;
  auto* cert = app.add_subcommand("certify", "Full verification pipeline for a weight datum");
  cert->add_option("--family", family, "triple | quad | theta")->required();
  cert->add_option("--weights", weights, "Weight datum")->required();
  cert->add_flag("--full", full, "Vertex scan and sampling regardless of the exact verdict");
  cert->callback([&] { action = [&] { return certify(family, weights, full, c, out); }; });

  std::string conv_path;
  int cal_samples = 1000;
  auto* cal = app.add_subcommand("calibrate-octonions", "Search and freeze the octonion convention");
  cal->add_option("--out", conv_path, "Convention file")->required();
  cal->add_option("--samples", cal_samples, "Random points per candidate")->check(CLI::Range(100, 1000000));
  cal->callback([&] { action = [&] { return calibrate(conv_path, cal_samples, c, out); }; });

  bool enum_only = false;
  auto* su = app.add_subcommand("suite", "Run every acceptance criterion");
  su->add_flag("--enumeration-only", enum_only, "Exact criteria only");
  su->callback([&] { action = [&] { return suite(enum_only, c, out); }; });

  std::string in_path;
  double val_tol = 1e-14;
  auto* val = app.add_subcommand("validate", "Recompute residuals of a sample file");
  val->add_option("file", in_path, "Sample file")->required()->check(CLI::ExistingFile);
  val->add_option("--tolerance", val_tol, "Allowed residual discrepancy");
  val->callback([&] { action = [&] { return validate(in_path, val_tol, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    err << "hkq: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "hkq: " << to_string(e.kind()) << ": " << e.what() << "\n";
    const bool usage = e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::DimensionMismatch;
    return usage ? kExitUsage : kExitFinding;
  } catch (const std::exception& e) {
    err << "hkq: " << e.what() << "\n";
    return kExitFinding;
  }
}

}  // namespace hkq::cli
