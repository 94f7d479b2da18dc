#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "causalgeo/report.hpp"
#include "causalgeo/svg.hpp"

using namespace causalgeo;

namespace {

Scenario named(const std::string& name, json params = json::object()) {
  Scenario s;
  s.name = name;
  s.parameters = std::move(params);
  return s;
}

}  // namespace

TEST_CASE("scenario registry lists the five verification surfaces") {
  const auto names = scenario_names();
  REQUIRE(names.size() == 5);
  CHECK(names[0] == "cone-cover-closure");
  CHECK(names[4] == "oracle-concurrence");
  CHECK_THROWS_AS(run_scenario(named("no-such-scenario")), scenario_error);
}

TEST_CASE("cone scenario reports the sector facts and the closure witness") {
  const Report r = run_scenario(named("cone-cover-closure"));
  const json& claims = r.claims();

  CHECK(claims.at("sector_angle_rad").at("value").get<double>() ==
        doctest::Approx(2.8099258924162904).epsilon(1e-12));
  CHECK(claims.at("sector_angle_deg").at("value").get<double>() ==
        doctest::Approx(160.99689).epsilon(1e-6));
  CHECK(claims.at("chord_length").at("value").get<double>() ==
        doctest::Approx(2.0 * std::sin(2.8099258924162904 / 4.0)));
  CHECK(claims.at("chord_below_floor").at("value") == json(true));
  CHECK(claims.at("base_causal_relation_closed").at("value") == json("yes"));
  CHECK(claims.at("cover_causal_relation_closed").at("value") == json("no"));
  CHECK(claims.at("witness_verdict").at("value") == json("closure-only"));
  CHECK(claims.at("witness_infimum").at("value").get<double>() == doctest::Approx(2.0));
  CHECK(claims.at("witness_attained").at("value") == json("no"));

  const json& witness = claims.at("cover_causal_relation_closed").at("witness");
  CHECK(witness.at("q_t").get<double>() == doctest::Approx(2.0));
  CHECK(witness.at("p_r").get<double>() == doctest::Approx(1.0));

  CHECK(claims.at("sector_angle_rad").at("provenance") == json("published"));
  CHECK(claims.at("witness_margin").at("provenance") == json("derived"));

  const auto v = validate_report(r.document);
  INFO(v.error);
  CHECK(v.ok);
}

TEST_CASE("effective parameters are echoed and unknown ones rejected") {
  const Report r = run_scenario(named("cone-cover-closure", {{"slope", 0.6}}));
  CHECK(r.payload().at("scenario").at("parameters").at("slope").get<double>() ==
        doctest::Approx(0.6));

  // Defaults are materialized into the echo.
  const Report d = run_scenario(named("cone-cover-closure"));
  CHECK(d.payload().at("scenario").at("parameters").at("slope").get<double>() ==
        doctest::Approx(0.5));

  CHECK_THROWS_AS(run_scenario(named("cone-cover-closure", {{"slop", 0.5}})), scenario_error);
  CHECK_THROWS_AS(run_scenario(named("cone-cover-closure", {{"slope", -1.0}})),
                  scenario_error);
  CHECK_THROWS_AS(run_scenario(named("punctured-reflectivity", {{"k_max", 0}})),
                  scenario_error);
}

TEST_CASE("punctured scenario reports the one-sided closure asymmetry") {
  const Report r = run_scenario(named("punctured-reflectivity", {{"k_max", 64}}));
  const json& claims = r.claims();

  CHECK(claims.at("base_future").at("value") == json(true));
  CHECK(claims.at("base_past").at("value") == json(true));
  CHECK(claims.at("base_violated").at("value") == json(false));
  CHECK(claims.at("future_sheets").at("value") == json::array({"right"}));
  CHECK(claims.at("future_sheet_count").at("value") == json(1));
  CHECK(claims.at("past_sheets").at("value") == json::array());
  CHECK(claims.at("past_sheet_count").at("value") == json(0));
  CHECK(claims.at("past_reflectivity_violated").at("value") == json(true));
  CHECK(claims.at("violating_sheets").at("value") == json::array({"right"}));
  CHECK(claims.at("sheets_checked").at("value") == json(66));

  const auto v = validate_report(r.document);
  INFO(v.error);
  CHECK(v.ok);
}

TEST_CASE("sphere scenario reports the sign law") {
  const Report r = run_scenario(
      named("sphere-trapped", {{"ambient_dim", 4}, {"radius", 1.0}, {"grid_per_dim", 4}}));
  const json& claims = r.claims();

  CHECK(claims.at("k_plus_max").at("value").get<double>() == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(claims.at("k_minus_min").at("value").get<double>() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(claims.at("sign_law_holds").at("value") == json(true));
  CHECK(claims.at("inner_trapped").at("value") == json(true));
  CHECK(claims.at("trace_convention").at("value") == json("trace"));
  CHECK(claims.at("curvature_worst_error").at("value").get<double>() < 1e-5);
  CHECK(claims.at("grid_points").at("value") == json(16));

  const auto v = validate_report(r.document);
  INFO(v.error);
  CHECK(v.ok);
}

TEST_CASE("criterion scenario issues the expected certificates") {
  const Report r = run_scenario(named("criterion-certificates"));
  const json& claims = r.claims();

  CHECK(claims.at("flat_certificate").at("value") == json("CertifiedPastReflecting"));
  CHECK(claims.at("flat_covering_clause").at("value") == json(true));
  CHECK(claims.at("line_removed_certificate").at("value") == json("CertifiedPastReflecting"));
  CHECK(claims.at("line_removed_covering_clause").at("value") == json(true));
  CHECK(claims.at("punctured_certificate").at("value") == json("Failed"));
  CHECK(claims.at("punctured_covering_clause").at("value") == json(false));
  CHECK(claims.at("punctured_escape_parameter").at("value").get<double>() ==
        doctest::Approx(-1.0).epsilon(1e-3));
  CHECK(claims.at("dilation_certificate").at("value") == json("Failed"));
  CHECK(claims.at("spacelike_certificate").at("value") == json("Failed"));
  CHECK(claims.at("certified_max_residual").at("value").get<double>() < 1e-6);

  const auto v = validate_report(r.document);
  INFO(v.error);
  CHECK(v.ok);
}

TEST_CASE("oracle scenario cross-checks and requires a seed") {
  const json params = {{"seed", 99},
                       {"cone_pairs", 20},
                       {"cone_resolution", 0.1},
                       {"punctured_instances", 25},
                       {"punctured_resolution_den", 500}};
  const Report r = run_scenario(named("oracle-concurrence", params));
  const json& claims = r.claims();

  CHECK(claims.at("cone_within_bound").at("value") == json(true));
  CHECK(claims.at("cone_lower_bound_ok").at("value") == json(true));
  CHECK(claims.at("cone_worst_error").at("value").get<double>() >= 0.0);
  CHECK(claims.at("punctured_mismatches").at("value") == json(0));
  CHECK(claims.at("punctured_agrees").at("value") == json(true));
  CHECK(claims.at("punctured_decided").at("value").get<long long>() >= 1);

  const auto v = validate_report(r.document);
  INFO(v.error);
  CHECK(v.ok);

  CHECK_THROWS_AS(run_scenario(named("oracle-concurrence", {{"cone_pairs", 5}})),
                  scenario_error);
}

TEST_CASE("reports are byte-identical given the same scenario and seed") {
  const std::vector<Scenario> scenarios = {
      named("cone-cover-closure"),
      named("punctured-reflectivity", {{"k_max", 32}}),
      named("sphere-trapped", {{"grid_per_dim", 3}}),
      named("criterion-certificates"),
      named("oracle-concurrence",
            {{"seed", 7}, {"cone_pairs", 6}, {"punctured_instances", 6}}),
  };
  for (const Scenario& s : scenarios) {
    const Report a = run_scenario(s);
    const Report b = run_scenario(s);
    CHECK(a.canonical_payload() == b.canonical_payload());
    // Expectation inputs never perturb the payload bytes.
    Scenario with_expect = s;
    with_expect.expected = json{{"nonexistent-claim", 1}};
    const Report c = run_scenario(with_expect);
    CHECK(c.canonical_payload() == a.canonical_payload());
    CHECK_FALSE(c.expectations_met);
  }
}

TEST_CASE("expected outcomes gate the result") {
  Scenario s = named("cone-cover-closure");
  s.expected = json{{"base_causal_relation_closed", "yes"},
                    {"cover_causal_relation_closed", "no"},
                    {"chord_below_floor", true},
                    {"witness_infimum", 2.0}};
  const Report pass = run_scenario(s);
  CHECK(pass.expectations_met);
  CHECK(pass.mismatches.empty());

  s.expected["cover_causal_relation_closed"] = "yes";
  const Report fail = run_scenario(s);
  CHECK_FALSE(fail.expectations_met);
  REQUIRE(fail.mismatches.size() == 1);
  CHECK(fail.mismatches[0].find("cover_causal_relation_closed") != std::string::npos);
}

TEST_CASE("schema validation rejects unknown or malformed fields") {
  const Report r = run_scenario(named("sphere-trapped", {{"grid_per_dim", 3}}));
  REQUIRE(validate_report(r.document).ok);

  json doc = r.document;
  doc["extra"] = 1;
  auto v = validate_report(doc);
  CHECK_FALSE(v.ok);
  CHECK(v.error.find("extra") != std::string::npos);

  doc = r.document;
  doc["payload"]["debug"] = true;
  v = validate_report(doc);
  CHECK_FALSE(v.ok);
  CHECK(v.error.find("payload.debug") != std::string::npos);

  doc = r.document;
  doc["payload"]["claims"]["inner_trapped"]["note"] = "hi";
  v = validate_report(doc);
  CHECK_FALSE(v.ok);
  CHECK(v.error.find("inner_trapped.note") != std::string::npos);

  doc = r.document;
  doc["payload"]["claims"]["inner_trapped"]["provenance"] = "guessed";
  v = validate_report(doc);
  CHECK_FALSE(v.ok);
  CHECK(v.error.find("provenance") != std::string::npos);

  doc = r.document;
  doc["wall_clock_ms"] = "fast";
  CHECK_FALSE(validate_report(doc).ok);

  doc = r.document;
  doc["payload"]["claims"] = json::object();
  CHECK_FALSE(validate_report(doc).ok);

  CHECK_FALSE(validate_report(json::array()).ok);
}

TEST_CASE("diagram emission is deterministic and scoped") {
  const Scenario cone = named("cone-cover-closure");
  const Report cr = run_scenario(cone);
  const std::string svg1 = emit_svg(cone, cr);
  const std::string svg2 = emit_svg(cone, cr);
  CHECK(svg1 == svg2);
  CHECK(svg1.find("<?xml") == 0);
  CHECK(svg1.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
  CHECK(svg1.find("&#963;") != std::string::npos);      // sigma
  CHECK(svg1.find("&#951;&#8321;") != std::string::npos);  // eta_1
  CHECK(svg1.find("&#951;&#8322;") != std::string::npos);  // eta_2
  CHECK(svg1.find(">a</text>") != std::string::npos);
  CHECK(svg1.find(">b</text>") != std::string::npos);

  const Scenario punct = named("punctured-reflectivity", {{"k_max", 16}});
  const Report pr = run_scenario(punct);
  const std::string axis = emit_svg(punct, pr);
  CHECK(axis.find("r&#8321;") != std::string::npos);
  CHECK(axis.find(">p</text>") != std::string::npos);
  CHECK(axis.find(">q</text>") != std::string::npos);

  const Scenario sphere = named("sphere-trapped", {{"grid_per_dim", 3}});
  CHECK_THROWS_AS(emit_svg(sphere, run_scenario(sphere)), scenario_error);
}
