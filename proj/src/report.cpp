#include "causalgeo/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "causalgeo/cone.hpp"
#include "causalgeo/cone_oracle.hpp"
#include "causalgeo/killing.hpp"
#include "causalgeo/metric.hpp"
#include "causalgeo/punctured.hpp"
#include "causalgeo/punctured_oracle.hpp"
#include "causalgeo/sampling.hpp"
#include "causalgeo/static_causality.hpp"
#include "causalgeo/surface.hpp"

namespace causalgeo {

namespace {

// ===== parameter handling =====

// Reads scenario parameters with defaults and range checks, records the
// effective values for the payload echo, and rejects unknown keys.
class Params {
 public:
  explicit Params(const json& obj) : in_(obj) {
    if (!in_.is_object()) {
      throw scenario_error("scenario parameters must form a JSON object");
    }
  }

  double number(const std::string& key, double fallback, double lo, double hi) {
    const json v = take(key);
    double out = fallback;
    if (!v.is_null()) {
      if (!v.is_number()) {
        throw scenario_error("parameter '" + key + "' must be a number");
      }
      out = v.get<double>();
    }
    if (!(out >= lo && out <= hi)) {
      std::ostringstream os;
      os << "parameter '" << key << "' = " << out << " outside [" << lo << ", " << hi << "]";
      throw scenario_error(os.str());
    }
    effective_[key] = out;
    return out;
  }

  long long integer(const std::string& key, long long fallback, long long lo, long long hi) {
    const json v = take(key);
    long long out = fallback;
    if (!v.is_null()) {
      if (!v.is_number_integer()) {
        throw scenario_error("parameter '" + key + "' must be an integer");
      }
      out = v.get<long long>();
    }
    if (out < lo || out > hi) {
      std::ostringstream os;
      os << "parameter '" << key << "' = " << out << " outside [" << lo << ", " << hi << "]";
      throw scenario_error(os.str());
    }
    effective_[key] = out;
    return out;
  }

  std::uint64_t required_seed() {
    const json v = take("seed");
    if (v.is_null()) {
      throw scenario_error("a seed is mandatory for sampled scenarios");
    }
    if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0)) {
      throw scenario_error("parameter 'seed' must be a nonnegative integer");
    }
    const std::uint64_t seed = v.get<std::uint64_t>();
    effective_["seed"] = seed;
    return seed;
  }

  // Call after all reads: any remaining key is unknown.
  json finish() {
    for (const auto& [key, value] : in_.items()) {
      (void)value;
      if (!consumed_.count(key)) {
        throw scenario_error("unknown parameter '" + key + "'");
      }
    }
    return effective_;
  }

 private:
  json take(const std::string& key) {
    consumed_.insert(key);
    return in_.contains(key) ? in_.at(key) : json();
  }

  json in_;
  json effective_ = json::object();
  std::set<std::string> consumed_;
};

// ===== claim builders =====

json claim(json value, const char* provenance) {
  return json{{"value", std::move(value)}, {"provenance", provenance}};
}

json claim_with_witness(json value, const char* provenance, json witness) {
  json c = claim(std::move(value), provenance);
  c["witness"] = std::move(witness);
  return c;
}

const char* tri_name(Trilean t) {
  switch (t) {
    case Trilean::Yes:
      return "yes";
    case Trilean::No:
      return "no";
    default:
      return "undecided";
  }
}

// ===== scenario: cone-cover-closure =====

json run_cone_scenario(Params& params) {
  const double slope = params.number("slope", 0.5, 1e-6, 64.0);
  const double theta = sector_angle(slope);
  const double kPi = 3.14159265358979323846;

  json claims = json::object();
  claims["sector_angle_rad"] = claim(theta, kProvPublished);
  claims["sector_angle_deg"] = claim(theta * 180.0 / kPi, kProvPublished);

  // Developed chord between unit-radius points half a sector apart, against
  // the through-apex floor of 2.
  const SegmentOutcome chord = segment_length(1.0, 1.0, 0.5 * theta);
  claims["chord_length"] = claim(chord.length, kProvPublished);
  claims["apex_floor"] = claim(2.0, kProvTrivial);
  claims["chord_below_floor"] = claim(chord.length < 2.0, kProvPublished);

  const ConeGeometry base = ConeGeometry::from_slope(slope);
  const auto base_check = is_causal_relation_closed(base);
  claims["base_convexity"] = claim(tri_name(base.convexity().convex), kProvPublished);
  claims["base_causal_relation_closed"] = claim(tri_name(base_check.closed), kProvPublished);

  const ConeGeometry cover = ConeGeometry::universal_cover();
  const auto cover_check = is_causal_relation_closed(cover);
  claims["cover_convexity"] = claim(tri_name(cover.convexity().convex), kProvPublished);

  json witness = json::object();
  if (cover_check.witness) {
    const auto& [p, q] = *cover_check.witness;
    witness["p_t"] = p.t;
    witness["p_r"] = p.x.r;
    witness["p_psi"] = p.x.psi;
    witness["q_t"] = q.t;
    witness["q_r"] = q.x.r;
    witness["q_psi"] = q.x.psi;
  }
  claims["cover_causal_relation_closed"] =
      claim_with_witness(tri_name(cover_check.closed), kProvPublished, std::move(witness));

  if (cover_check.witness_class) {
    const auto& wc = *cover_check.witness_class;
    claims["witness_verdict"] = claim(to_string(wc.verdict), kProvPublished);
    claims["witness_infimum"] = claim(wc.separation.infimum, kProvPublished);
    claims["witness_attained"] = claim(tri_name(wc.separation.attained), kProvPublished);
    claims["witness_margin"] = claim(wc.margin, kProvDerived);
  }
  return claims;
}

// ===== scenario: punctured-reflectivity =====

json run_punctured_scenario(Params& params) {
  const long long k_max = params.integer("k_max", 1000, 1, 2000000);

  const PlaneEvent p{Rational(-1), Rational(1)};
  const PlaneEvent q{Rational(1), Rational(-1)};
  const ReflectivityTable table = reflectivity_report(p, q, k_max);

  json future_sheets = json::array();
  json past_sheets = json::array();
  for (const SheetRow& row : table.rows) {
    if (row.future) {
      future_sheets.push_back(row.gap.name());
    }
    if (row.past) {
      past_sheets.push_back(row.gap.name());
    }
  }
  json violating = json::array();
  for (const Gap& g : table.violating) {
    violating.push_back(g.name());
  }

  json claims = json::object();
  claims["base_future"] = claim(table.base_future, kProvTrivial);
  claims["base_past"] = claim(table.base_past, kProvTrivial);
  claims["base_violated"] = claim(table.base_violated, kProvPublished);
  claims["future_sheets"] = claim(std::move(future_sheets), kProvPublished);
  claims["future_sheet_count"] = claim(table.futures_true, kProvPublished);
  claims["past_sheets"] = claim(std::move(past_sheets), kProvPublished);
  claims["past_sheet_count"] = claim(table.pasts_true, kProvPublished);
  claims["past_reflectivity_violated"] = claim(!table.violating.empty(), kProvPublished);
  claims["violating_sheets"] = claim(std::move(violating), kProvPublished);
  claims["sheets_checked"] = claim(table.rows.size(), kProvDerived);
  return claims;
}

// ===== scenario: sphere-trapped =====

json run_sphere_scenario(Params& params) {
  const long long ambient = params.integer("ambient_dim", 4, 3, 6);
  const double radius = params.number("radius", 1.0, 1e-3, 1e3);
  const long long per_dim = params.integer("grid_per_dim", 5, 2, 24);
  const double h = params.number("fd_step", 1e-3, 1e-8, 0.1);

  const SlicedSurface sphere =
      fixtures::sphere_surface(static_cast<int>(ambient), radius);
  const auto grid = fixtures::parameter_grid(sphere, static_cast<int>(per_dim));

  const double reference = static_cast<double>(ambient - 2) / radius;
  double k_plus_max = -std::numeric_limits<double>::infinity();
  double k_minus_min = std::numeric_limits<double>::infinity();
  double worst_err = 0.0;
  for (const VecL& u : grid) {
    const ConvergenceSample cs = null_convergences(sphere, u, h);
    k_plus_max = std::max(k_plus_max, cs.k_plus);
    k_minus_min = std::min(k_minus_min, cs.k_minus);
    worst_err = std::max(worst_err, std::fabs(cs.H.norm() - reference));
  }
  const TrappedResult trapped = is_inner_trapped(sphere, grid, h);

  json claims = json::object();
  claims["k_plus_max"] = claim(k_plus_max, kProvPublished);
  claims["k_minus_min"] = claim(k_minus_min, kProvPublished);
  claims["sign_law_holds"] = claim(k_plus_max < 0.0 && k_minus_min > 0.0, kProvPublished);
  claims["inner_trapped"] = claim(trapped.inner_trapped, kProvPublished);
  claims["curvature_reference"] = claim(reference, kProvTrivial);
  claims["curvature_worst_error"] = claim(worst_err, kProvDerived);
  claims["trace_convention"] = claim(kMeanCurvatureConvention, kProvTrivial);
  claims["grid_points"] = claim(grid.size(), kProvTrivial);
  return claims;
}

// ===== scenario: criterion-certificates =====

json run_criterion_scenario(Params& params) {
  CertifyConfig cfg;
  cfg.h = params.number("fd_step", 1e-4, 1e-8, 0.1);
  cfg.tol = params.number("residual_tol", 1e-6, 1e-12, 1.0);
  cfg.budget = params.number("probe_budget", 50.0, 0.0, 1e6);

  json claims = json::object();

  // Flat plane, time translation: complete timelike Killing field.
  {
    CertifyConfig c = cfg;
    c.killing_samples = fixtures::sample_box({{-1.0, 1.0}, {-1.0, 1.0}}, 4);
    c.probe_starts = {Vec::Zero(2)};
    const Certificate cert = certify_past_reflectivity(
        fixtures::coordinate_field(2, 0, "d_t"), fixtures::minkowski(2), c);
    claims["flat_certificate"] = claim(to_string(cert.verdict), kProvTrivial);
    claims["flat_covering_clause"] = claim(cert.covering_clause, kProvTrivial);
  }

  double certified_max_residual = 0.0;

  // Plane minus two vertical lines: still certifiable.
  {
    CertifyConfig c = cfg;
    c.killing_samples = fixtures::sample_box({{-1.0, 1.0}, {-3.0, 3.0}, {-3.0, 3.0}}, 4);
    Vec s0(3), s1(3);
    s0 << 0.0, -2.25, 0.75;
    s1 << 1.0, 0.75, -0.75;
    c.probe_starts = {s0, s1};
    std::vector<Vec> lines;
    Vec z0(2), z1(2);
    z0 << 0.0, 0.0;
    z1 << 2.0, 0.0;
    lines = {z0, z1};
    const Certificate cert =
        certify_past_reflectivity(fixtures::coordinate_field(3, 0, "d_t"),
                                  fixtures::line_removed_minkowski(3, lines), c);
    claims["line_removed_certificate"] = claim(to_string(cert.verdict), kProvPublished);
    claims["line_removed_covering_clause"] = claim(cert.covering_clause, kProvPublished);
    certified_max_residual = std::max(certified_max_residual, cert.killing.max_residual);
  }

  // Punctured plane: the Killing test passes but the flow is incomplete.
  {
    CertifyConfig c = cfg;
    c.killing_samples = fixtures::sample_box({{0.5, 1.5}, {-2.0, 2.0}}, 4);
    Vec above(2);
    above << 1.0, 0.0;
    c.probe_starts = {above};
    c.budget = std::max(2.0, std::min(cfg.budget, 10.0));
    const Certificate cert = certify_past_reflectivity(
        fixtures::coordinate_field(2, 0, "d_t"), fixtures::punctured_minkowski_2d(), c);
    claims["punctured_certificate"] = claim(to_string(cert.verdict), kProvPublished);
    claims["punctured_covering_clause"] = claim(cert.covering_clause, kProvPublished);
    const double esc = cert.completeness.trajectories.empty()
                           ? 0.0
                           : cert.completeness.trajectories.front().parameter;
    claims["punctured_escape_parameter"] = claim(esc, kProvPublished);
    certified_max_residual = std::max(certified_max_residual, cert.killing.max_residual);
  }

  // Negative candidates on the flat plane.
  {
    CertifyConfig c = cfg;
    c.killing_samples = fixtures::sample_box({{-1.0, 1.0}, {-1.0, 1.0}}, 3);
    c.probe_starts = {Vec::Zero(2)};
    const Certificate dil = certify_past_reflectivity(fixtures::time_dilation_field(2),
                                                      fixtures::minkowski(2), c);
    claims["dilation_certificate"] = claim(to_string(dil.verdict), kProvTrivial);
    const Certificate spc = certify_past_reflectivity(
        fixtures::coordinate_field(2, 1, "d_x"), fixtures::minkowski(2), c);
    claims["spacelike_certificate"] = claim(to_string(spc.verdict), kProvTrivial);
  }

  claims["certified_max_residual"] = claim(certified_max_residual, kProvDerived);
  return claims;
}

// ===== scenario: oracle-concurrence =====

Rational small_rational(std::mt19937_64& rng, int num_lo, int num_hi, int den_hi) {
  std::uniform_int_distribution<int> num(num_lo, num_hi);
  std::uniform_int_distribution<int> den(1, den_hi);
  return Rational(num(rng), den(rng));
}

json run_oracle_scenario(Params& params) {
  const std::uint64_t seed = params.required_seed();
  const long long cone_pairs = params.integer("cone_pairs", 60, 1, 5000);
  const double cone_resolution = params.number("cone_resolution", 0.08, 0.005, 0.5);
  const long long instances = params.integer("punctured_instances", 60, 1, 5000);
  const long long res_den = params.integer("punctured_resolution_den", 1000, 10, 100000);

  json claims = json::object();

  // Cone side: the mesh search must stay within the calibrated error model
  // and can never undercut the exact infimum.
  {
    const ConeGeometry geoms[2] = {ConeGeometry::from_slope(0.5),
                                   ConeGeometry::universal_cover()};
    double worst_err = 0.0;
    double worst_bound_ratio = 0.0;
    bool lower_ok = true;
    constexpr double kBoundScale = 2.0;
    for (long long i = 0; i < cone_pairs; ++i) {
      auto rng = rng_for(seed, static_cast<std::uint64_t>(i));
      const ConeGeometry& geom = geoms[i % 2];
      const ConePoint a = sample_point(geom, rng);
      const ConePoint b = sample_point(geom, rng);
      const GeodesicResult exact = geom.distance(a, b);
      const MeshStats mesh = oracle_distance_stats(a, b, geom, cone_resolution);
      const double err = mesh.length - exact.infimum;
      if (err < -1e-9) {
        lower_ok = false;
      }
      const double bound = kBoundScale * (cone_resolution + mesh.r_inner);
      worst_err = std::max(worst_err, err);
      worst_bound_ratio = std::max(worst_bound_ratio, err / bound);
    }
    claims["cone_pairs"] = claim(cone_pairs, kProvTrivial);
    claims["cone_worst_error"] = claim(worst_err, kProvDerived);
    claims["cone_bound_scale"] = claim(kBoundScale, kProvDerived);
    claims["cone_within_bound"] = claim(worst_bound_ratio <= 1.0, kProvDerived);
    claims["cone_lower_bound_ok"] = claim(lower_ok, kProvDerived);
  }

  // Punctured side: every instance the grid search decides must agree with
  // the exact rational predicate.
  {
    GridOracleConfig cfg;
    cfg.resolution = Rational(1, static_cast<long long>(res_den));
    long long decided = 0;
    long long mismatches = 0;
    for (long long i = 0; i < instances; ++i) {
      auto rng = rng_for(seed, 1u << 20 | static_cast<std::uint64_t>(i));
      const PlaneEvent p{-small_rational(rng, 1, 8, 4), small_rational(rng, -6, 6, 4)};
      const PlaneEvent q{small_rational(rng, 1, 8, 4), small_rational(rng, -6, 6, 4)};
      std::uniform_int_distribution<int> pick(0, 5);
      const int sel = pick(rng);
      const Gap g = sel == 0 ? Gap::left() : sel == 1 ? Gap::right() : Gap::mid(sel - 1);
      const bool exact = lifted_chron(CoverPoint::anchor(p), CoverPoint::on_sheet(q, g));
      const OracleAnswer ans = oracle_grid_search(p, q, g, cfg);
      if (ans == OracleAnswer::Inconclusive) {
        continue;
      }
      ++decided;
      if ((ans == OracleAnswer::Yes) != exact) {
        ++mismatches;
      }
    }
    claims["punctured_instances"] = claim(instances, kProvTrivial);
    claims["punctured_decided"] = claim(decided, kProvDerived);
    claims["punctured_decided_fraction"] =
        claim(static_cast<double>(decided) / static_cast<double>(instances), kProvDerived);
    claims["punctured_mismatches"] = claim(mismatches, kProvDerived);
    claims["punctured_agrees"] = claim(mismatches == 0, kProvDerived);
  }
  return claims;
}

// ===== assembly and expectations =====

bool values_match(const json& got, const json& want) {
  if (got.is_number() && want.is_number() && (got.is_number_float() || want.is_number_float())) {
    const double a = got.get<double>();
    const double b = want.get<double>();
    return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
  }
  return got == want;
}

}  // namespace

std::vector<std::string> scenario_names() {
  return {"cone-cover-closure", "punctured-reflectivity", "sphere-trapped",
          "criterion-certificates", "oracle-concurrence"};
}

Report run_scenario(const Scenario& s) {
  const auto start = std::chrono::steady_clock::now();

  Params params(s.parameters);
  json claims;
  if (s.name == "cone-cover-closure") {
    claims = run_cone_scenario(params);
  } else if (s.name == "punctured-reflectivity") {
    claims = run_punctured_scenario(params);
  } else if (s.name == "sphere-trapped") {
    claims = run_sphere_scenario(params);
  } else if (s.name == "criterion-certificates") {
    claims = run_criterion_scenario(params);
  } else if (s.name == "oracle-concurrence") {
    claims = run_oracle_scenario(params);
  } else {
    throw scenario_error("unknown scenario '" + s.name + "'");
  }
  const json effective = params.finish();

  Report report;
  report.document = json{
      {"artifact_version", kArtifactVersion},
      {"payload",
       json{{"scenario", json{{"name", s.name}, {"parameters", effective}}},
            {"claims", claims}}},
  };

  if (s.expected.is_object()) {
    for (const auto& [key, want] : s.expected.items()) {
      if (!claims.contains(key)) {
        report.mismatches.push_back("expected claim '" + key + "' is missing");
        continue;
      }
      const json& got = claims.at(key).at("value");
      if (!values_match(got, want)) {
        report.mismatches.push_back("claim '" + key + "': expected " + want.dump() +
                                    ", got " + got.dump());
      }
    }
  } else if (!s.expected.is_null()) {
    throw scenario_error("expected outcomes must form a JSON object");
  }
  report.expectations_met = report.mismatches.empty();

  const auto stop = std::chrono::steady_clock::now();
  report.document["wall_clock_ms"] =
      std::chrono::duration<double, std::milli>(stop - start).count();
  return report;
}

// ===== schema validation =====

namespace {

bool is_primitive(const json& j) {
  return j.is_string() || j.is_boolean() || j.is_number();
}

ValidationResult fail(const std::string& path, const std::string& what) {
  return {false, path + ": " + what};
}

ValidationResult check_object_keys(const json& obj, const std::string& path,
                                   const std::set<std::string>& required,
                                   const std::set<std::string>& optional) {
  if (!obj.is_object()) {
    return fail(path, "must be an object");
  }
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!required.count(key) && !optional.count(key)) {
      return fail(path + "." + key, "unknown field");
    }
  }
  for (const std::string& key : required) {
    if (!obj.contains(key)) {
      return fail(path + "." + key, "missing required field");
    }
  }
  return {true, ""};
}

ValidationResult validate_claim(const json& c, const std::string& path) {
  auto keys = check_object_keys(c, path, {"value", "provenance"}, {"witness"});
  if (!keys.ok) {
    return keys;
  }
  const json& value = c.at("value");
  if (value.is_array()) {
    for (const json& item : value) {
      if (!is_primitive(item)) {
        return fail(path + ".value", "array entries must be primitives");
      }
    }
  } else if (!is_primitive(value)) {
    return fail(path + ".value", "must be a primitive or an array of primitives");
  }
  const json& prov = c.at("provenance");
  if (!prov.is_string() ||
      (prov != kProvPublished && prov != kProvDerived && prov != kProvTrivial)) {
    return fail(path + ".provenance", "must be one of published/derived/trivial");
  }
  if (c.contains("witness")) {
    const json& w = c.at("witness");
    if (!w.is_object()) {
      return fail(path + ".witness", "must be an object");
    }
    for (const auto& [key, item] : w.items()) {
      if (!is_primitive(item)) {
        return fail(path + ".witness." + key, "must be a primitive");
      }
    }
  }
  return {true, ""};
}

}  // namespace

ValidationResult validate_report(const json& doc) {
  auto root = check_object_keys(doc, "report",
                                {"artifact_version", "payload", "wall_clock_ms"}, {});
  if (!root.ok) {
    return root;
  }
  if (!doc.at("artifact_version").is_string()) {
    return fail("report.artifact_version", "must be a string");
  }
  if (!doc.at("wall_clock_ms").is_number() || doc.at("wall_clock_ms").get<double>() < 0.0) {
    return fail("report.wall_clock_ms", "must be a nonnegative number");
  }

  const json& payload = doc.at("payload");
  auto pl = check_object_keys(payload, "report.payload", {"scenario", "claims"}, {});
  if (!pl.ok) {
    return pl;
  }

  const json& scenario = payload.at("scenario");
  auto sc = check_object_keys(scenario, "report.payload.scenario", {"name", "parameters"}, {});
  if (!sc.ok) {
    return sc;
  }
  if (!scenario.at("name").is_string()) {
    return fail("report.payload.scenario.name", "must be a string");
  }
  const json& parameters = scenario.at("parameters");
  if (!parameters.is_object()) {
    return fail("report.payload.scenario.parameters", "must be an object");
  }
  for (const auto& [key, value] : parameters.items()) {
    if (!is_primitive(value)) {
      return fail("report.payload.scenario.parameters." + key, "must be a primitive");
    }
  }

  const json& claims = payload.at("claims");
  if (!claims.is_object() || claims.empty()) {
    return fail("report.payload.claims", "must be a nonempty object");
  }
  for (const auto& [key, value] : claims.items()) {
    auto cl = validate_claim(value, "report.payload.claims." + key);
    if (!cl.ok) {
      return cl;
    }
  }
  return {true, ""};
}

}  // namespace causalgeo
