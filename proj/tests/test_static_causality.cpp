#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "causalgeo/cone.hpp"
#include "causalgeo/sampling.hpp"
#include "causalgeo/static_causality.hpp"

using namespace causalgeo;

namespace {

constexpr double kPi = 3.14159265358979323846;

using ConeEvent = Event<ConePoint>;

// Event sampler for reflectivity checks: time uniform in [-2, 2], base point
// from the geometry's sampling window.
auto event_gen(const ConeGeometry& geom) {
  return [&geom](std::mt19937_64& rng) {
    ConeEvent e;
    e.t = uniform_in(rng, -2.0, 2.0);
    e.x = sample_point(geom, rng);
    return e;
  };
}

}  // namespace

static_assert(BaseGeometry<ConeGeometry>, "flat cones must model the base-geometry concept");

TEST_CASE("verdict names render") {
  CHECK(to_string(CausalVerdict::Equal) == "equal");
  CHECK(to_string(CausalVerdict::Chronological) == "chronological");
  CHECK(to_string(CausalVerdict::CausalNotChronological) == "causal-not-chronological");
  CHECK(to_string(CausalVerdict::ClosureOnly) == "closure-only");
  CHECK(to_string(CausalVerdict::Unrelated) == "unrelated");
  CHECK(to_string(CausalVerdict::Indeterminate) == "indeterminate");
}

TEST_CASE("classification on a convex base cone") {
  const ConeGeometry geom = ConeGeometry::from_slope(0.5);
  const ConePoint a{1.0, 0.0};
  const ConePoint b{1.0, 1.4};
  const double chord = 2.0 * std::sin(0.7);  // attained distance of (a, b)

  // Strictly timelike, both time orders.
  auto c = classify(ConeEvent{0.0, a}, ConeEvent{2.0, b}, geom);
  CHECK(c.verdict == CausalVerdict::Chronological);
  CHECK(c.dt == doctest::Approx(2.0));
  CHECK(c.margin > 0.0);

  c = classify(ConeEvent{2.0, b}, ConeEvent{0.0, a}, geom);
  CHECK(c.verdict == CausalVerdict::Chronological);
  CHECK(c.dt == doctest::Approx(-2.0));

  // Null stratum with an attained minimizer: causal but not chronological.
  c = classify(ConeEvent{0.0, a}, ConeEvent{chord, b}, geom);
  CHECK(c.verdict == CausalVerdict::CausalNotChronological);
  CHECK(c.separation.attained == Trilean::Yes);
  CHECK(std::fabs(c.margin) <= 1e-12);

  // Spacelike.
  c = classify(ConeEvent{0.0, a}, ConeEvent{0.5, b}, geom);
  CHECK(c.verdict == CausalVerdict::Unrelated);
  CHECK(c.margin < 0.0);

  // Identical events and near-coincident noise.
  c = classify(ConeEvent{1.0, a}, ConeEvent{1.0, a}, geom);
  CHECK(c.verdict == CausalVerdict::Equal);
  c = classify(ConeEvent{1.0, a}, ConeEvent{1.0 + 1e-14, a}, geom);
  CHECK(c.verdict == CausalVerdict::Indeterminate);
}

TEST_CASE("equality stratum on the universal cover is closure-only") {
  const ConeGeometry cover = ConeGeometry::universal_cover();
  const ConePoint a{1.0, 0.0};
  const ConePoint b{1.0, 1.5 * kPi};

  // The infimum 2 is not attained: the pair is related only through cl(J).
  const GeodesicResult sep = cover.distance(a, b);
  REQUIRE(sep.infimum == doctest::Approx(2.0));
  REQUIRE(sep.attained == Trilean::No);

  auto c = classify(ConeEvent{0.0, a}, ConeEvent{2.0, b}, cover);
  CHECK(c.verdict == CausalVerdict::ClosureOnly);

  // The closure boundary is sharp on both sides.
  c = classify(ConeEvent{0.0, a}, ConeEvent{2.0 + 1e-6, b}, cover);
  CHECK(c.verdict == CausalVerdict::Chronological);
  c = classify(ConeEvent{0.0, a}, ConeEvent{2.0 - 1e-6, b}, cover);
  CHECK(c.verdict == CausalVerdict::Unrelated);

  // At opening exactly pi the attainment itself is undecidable: the verdict
  // honestly reports Indeterminate.
  const ConePoint band{1.0, kPi};
  c = classify(ConeEvent{0.0, a}, ConeEvent{2.0, band}, cover);
  CHECK(c.verdict == CausalVerdict::Indeterminate);
}

TEST_CASE("closure of the causal relation follows base convexity") {
  // Convex regimes: closed, no witness.
  for (const ConeGeometry& geom :
       {ConeGeometry::from_slope(0.5), ConeGeometry::base(5.9)}) {
    const auto check = is_causal_relation_closed(geom);
    CHECK(check.closed == Trilean::Yes);
    CHECK_FALSE(check.witness.has_value());
  }

  // A covering pushed past 2*pi loses closedness; the witness pair is related
  // exactly through the closure.
  const ConeGeometry wide = ConeGeometry::cyclic_cover(2.8099258924162904, 3);
  auto check = is_causal_relation_closed(wide);
  CHECK(check.closed == Trilean::No);
  REQUIRE(check.witness.has_value());
  REQUIRE(check.witness_class.has_value());
  CHECK(check.witness_class->verdict == CausalVerdict::ClosureOnly);
  CHECK(check.witness->second.t == doctest::Approx(2.0));

  const auto universal = is_causal_relation_closed(ConeGeometry::universal_cover());
  CHECK(universal.closed == Trilean::No);
  REQUIRE(universal.witness_class.has_value());
  CHECK(universal.witness_class->verdict == CausalVerdict::ClosureOnly);

  // Total angle exactly 2*pi sits inside the tolerance band.
  const auto band = is_causal_relation_closed(ConeGeometry::cyclic_cover(kPi, 2));
  CHECK(band.closed == Trilean::Undecided);
  REQUIRE(band.witness_class.has_value());
  CHECK(band.witness_class->verdict == CausalVerdict::Indeterminate);
}

TEST_CASE("reflectivity sampling stays clean on every cone geometry") {
  const std::vector<ConeGeometry> geometries = {
      ConeGeometry::from_slope(0.5),
      ConeGeometry::base(5.9),
      ConeGeometry::cyclic_cover(2.0943951023931953, 4),
      ConeGeometry::universal_cover(),
  };
  for (const ConeGeometry& geom : geometries) {
    const auto report = check_reflectivity_samples(geom, 400, 20260823u, event_gen(geom));
    CHECK(report.checked == 400);
    CHECK(report.clean());
  }
}

TEST_CASE("the ladder property is one-way") {
  // Closed causal relation always comes with clean reflectivity samples...
  const ConeGeometry convex = ConeGeometry::from_slope(0.5);
  CHECK(is_causal_relation_closed(convex).closed == Trilean::Yes);
  CHECK(check_reflectivity_samples(convex, 300, 7u, event_gen(convex)).clean());

  // ...but clean reflectivity does not force closedness: the universal cover
  // is reflecting while its causal relation fails to be closed.
  const ConeGeometry cover = ConeGeometry::universal_cover();
  CHECK(is_causal_relation_closed(cover).closed == Trilean::No);
  CHECK(check_reflectivity_samples(cover, 300, 7u, event_gen(cover)).clean());
}

TEST_CASE("classification propagates base-geometry guards") {
  const ConeGeometry geom = ConeGeometry::from_slope(0.5);
  CHECK_THROWS_AS(
      classify(ConeEvent{0.0, ConePoint{-1.0, 0.0}}, ConeEvent{1.0, ConePoint{1.0, 0.0}}, geom),
      std::domain_error);
}
