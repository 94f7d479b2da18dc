#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "causalgeo/cone.hpp"
#include "causalgeo/cone_oracle.hpp"
#include "causalgeo/sampling.hpp"

using namespace causalgeo;

namespace {
constexpr double kPi = std::numbers::pi;

ConePoint sample_in(std::mt19937_64& rng, const ConeGeometry& g,
                    double r_lo = 0.5, double r_hi = 2.0, double psi_span = 2.2) {
    ConeSampleWindow w;
    w.r_lo = r_lo;
    w.r_hi = r_hi;
    w.psi_span = psi_span;
    return sample_point(g, rng, w);
}
} // namespace

// ===== sector angle =====

TEST_CASE("sector angle of the embedded cone") {
    SUBCASE("reference slope one half") {
        const double theta = sector_angle(0.5);
        CHECK(theta == doctest::Approx(kPi / std::sqrt(1.25)).epsilon(1e-15));
        CHECK(theta == doctest::Approx(2.809925892).epsilon(1e-9));
        CHECK(theta * 180.0 / kPi == doctest::Approx(160.9969).epsilon(1e-5));
    }
    SUBCASE("threshold slopes") {
        // Opening angle pi at slope 1/sqrt(3); 2*pi/3 at slope 1/(2*sqrt(2)).
        CHECK(sector_angle(1.0 / std::sqrt(3.0)) == doctest::Approx(kPi).epsilon(1e-14));
        CHECK(sector_angle(1.0 / (2.0 * std::sqrt(2.0))) ==
              doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-14));
    }
    SUBCASE("monotone and bounded") {
        double prev = 0.0;
        for (double a = 0.05; a < 40.0; a *= 1.7) {
            const double t = sector_angle(a);
            CHECK(t > prev);
            CHECK(t < 2.0 * kPi);
            prev = t;
        }
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(sector_angle(0.0), std::domain_error);
        CHECK_THROWS_AS(sector_angle(-1.0), std::domain_error);
        CHECK_THROWS_AS(sector_angle(std::nan("")), std::domain_error);
    }
}

// ===== construction and angles =====

TEST_CASE("geometry construction guards") {
    CHECK_THROWS_AS(ConeGeometry::base(0.0), std::domain_error);
    CHECK_THROWS_AS(ConeGeometry::base(2.0 * kPi), std::domain_error);
    CHECK_THROWS_AS(ConeGeometry::cyclic_cover(1.0, 0), std::domain_error);
    CHECK_THROWS_AS(ConeGeometry::universal_cover().total_angle(), std::domain_error);
    CHECK_THROWS_AS(ConeGeometry::universal_cover().fold(), std::domain_error);

    const auto cover = ConeGeometry::cyclic_cover(2.0, 3);
    CHECK(cover.total_angle() == doctest::Approx(6.0));
    CHECK(cover.fold() == 3);
    CHECK(cover.base_angle() == doctest::Approx(2.0));
    CHECK(ConeGeometry::cyclic_cover(2.0, 1).kind() == ConeKind::BaseCone);
}

TEST_CASE("angle reduction and developed separation") {
    const auto g = ConeGeometry::base(2.8);
    CHECK(g.reduce_angle(2.8) == doctest::Approx(0.0));
    CHECK(g.reduce_angle(-0.1) == doctest::Approx(2.7));
    CHECK(g.reduce_angle(5.7) == doctest::Approx(0.1));

    const ConePoint p{1.0, 0.0};
    const ConePoint q{1.0, 1.4};
    CHECK(developed_separation(p, q, 0, g) == doctest::Approx(1.4));
    CHECK(developed_separation(p, q, 1, g) == doctest::Approx(1.4 + 2.8));
    CHECK(developed_separation(p, q, -1, g) == doctest::Approx(1.4 - 2.8));

    const auto u = ConeGeometry::universal_cover();
    CHECK(developed_separation(p, q, 0, u) == doctest::Approx(1.4));
    CHECK_THROWS_AS(developed_separation(p, q, 1, u), std::domain_error);
}

// ===== segments =====

TEST_CASE("segment length in the developed picture") {
    SUBCASE("radial and symmetric chords") {
        const auto radial = segment_length(1.0, 2.0, 0.0);
        CHECK(radial.direct == Trilean::Yes);
        CHECK(radial.length == doctest::Approx(1.0).epsilon(1e-15));

        const double theta = sector_angle(0.5);
        const auto half = segment_length(1.0, 1.0, 0.5 * theta);
        CHECK(half.direct == Trilean::Yes);
        CHECK(half.length == doctest::Approx(2.0 * std::sin(theta / 4.0)).epsilon(1e-14));
        CHECK(std::fabs(half.length - 1.2922) < 5e-4);
    }
    SUBCASE("apex route at wide openings") {
        const auto wide = segment_length(1.0, 1.0, 4.7);
        CHECK(wide.direct == Trilean::No);
        CHECK(wide.length == doctest::Approx(2.0));
    }
    SUBCASE("tolerance band around pi") {
        CHECK(segment_length(1.0, 1.0, kPi).direct == Trilean::Undecided);
        CHECK(segment_length(1.0, 1.0, kPi - 1e-13).direct == Trilean::Undecided);
        CHECK(segment_length(1.0, 1.0, kPi - 1e-9).direct == Trilean::Yes);
        CHECK(segment_length(1.0, 1.0, kPi + 1e-9).direct == Trilean::No);
    }
    SUBCASE("near-coincident points stay accurate") {
        // A naive law of cosines loses these digits to cancellation.
        const auto tiny = segment_length(1.0, 1.0, 1e-9);
        CHECK(tiny.length == doctest::Approx(1e-9).epsilon(1e-6));
        CHECK(tiny.length > 0.0);
    }
    SUBCASE("bad radii") {
        CHECK_THROWS_AS(segment_length(0.0, 1.0, 0.1), std::domain_error);
        CHECK_THROWS_AS(segment_length(1.0, -2.0, 0.1), std::domain_error);
    }
}

// ===== distance =====

TEST_CASE("distance basics") {
    const auto u = ConeGeometry::universal_cover();

    SUBCASE("coincident points") {
        const auto d = distance({1.3, 0.7}, {1.3, 0.7}, u);
        CHECK(d.infimum == 0.0);
        CHECK(d.attained == Trilean::Yes);
        CHECK(d.winding == 0);
    }
    SUBCASE("direct chord on the universal cover") {
        const auto d = distance({1.0, 0.0}, {2.0, 1.0}, u);
        CHECK(d.attained == Trilean::Yes);
        CHECK(d.infimum ==
              doctest::Approx(std::sqrt(1.0 + 4.0 - 4.0 * std::cos(1.0))).epsilon(1e-14));
    }
    SUBCASE("apex route on the universal cover") {
        const double theta = sector_angle(0.5);
        const auto d = distance({1.0, 0.0}, {1.0, 1.5 * theta}, u);
        CHECK(d.attained == Trilean::No);
        CHECK(d.apex_route());
        CHECK(d.infimum == doctest::Approx(2.0));
    }
    SUBCASE("band opening is undecided") {
        const auto d = distance({1.0, 0.0}, {2.0, kPi}, u);
        CHECK(d.attained == Trilean::Undecided);
        CHECK(d.infimum == doctest::Approx(3.0));
    }
    SUBCASE("winding picks the short way around") {
        const auto g = ConeGeometry::base(2.81);
        const auto d = distance({1.0, 0.0}, {1.0, 2.7}, g);
        CHECK(d.attained == Trilean::Yes);
        CHECK(d.winding == -1);
        CHECK(d.infimum == doctest::Approx(2.0 * std::sin(0.5 * (2.81 - 2.7))).epsilon(1e-12));
    }
    SUBCASE("wrapped cone below pi never needs the apex") {
        const auto g = ConeGeometry::base(2.0);
        auto rng = rng_for(41, 0);
        for (int i = 0; i < 2000; ++i) {
            const auto p = sample_in(rng, g);
            const auto q = sample_in(rng, g);
            CHECK(distance(p, q, g).attained == Trilean::Yes);
        }
    }
    SUBCASE("invalid points") {
        CHECK_THROWS_AS(distance({0.0, 0.0}, {1.0, 0.0}, u), std::domain_error);
    }
}

TEST_CASE("distance is symmetric") {
    const ConeGeometry geoms[] = {
        ConeGeometry::from_slope(0.5),
        ConeGeometry::base(5.0),
        ConeGeometry::cyclic_cover(2.8, 2),
        ConeGeometry::universal_cover(),
    };
    std::size_t idx = 0;
    for (const auto& g : geoms) {
        auto rng = rng_for(7, idx++);
        for (int i = 0; i < 2500; ++i) {
            const auto p = sample_in(rng, g, 0.3, 3.0, 4.0);
            const auto q = sample_in(rng, g, 0.3, 3.0, 4.0);
            const auto ab = distance(p, q, g);
            const auto ba = distance(q, p, g);
            CHECK(ab.infimum == ba.infimum);
            CHECK(ab.attained == ba.attained);
        }
    }
}

TEST_CASE("triangle inequality on infima") {
    const ConeGeometry geoms[] = {
        ConeGeometry::from_slope(0.5),
        ConeGeometry::base(5.5),
        ConeGeometry::cyclic_cover(2.8, 3),
        ConeGeometry::universal_cover(),
    };
    std::size_t idx = 100;
    std::size_t checked = 0;
    for (const auto& g : geoms) {
        auto rng = rng_for(7, idx++);
        for (int i = 0; i < 2600; ++i) {
            const auto a = sample_in(rng, g, 0.3, 3.0, 4.0);
            const auto b = sample_in(rng, g, 0.3, 3.0, 4.0);
            const auto c = sample_in(rng, g, 0.3, 3.0, 4.0);
            const double ab = distance(a, b, g).infimum;
            const double bc = distance(b, c, g).infimum;
            const double ac = distance(a, c, g).infimum;
            CHECK(ac <= ab + bc + 1e-9);
            ++checked;
        }
    }
    CHECK(checked >= 10000);
}

TEST_CASE("distance grows with the angular opening") {
    const auto u = ConeGeometry::universal_cover();
    double prev = -1.0;
    for (double dpsi = 0.0; dpsi < kPi - 1e-6; dpsi += 0.01) {
        const double d = distance({1.0, 0.0}, {1.4, dpsi}, u).infimum;
        CHECK(d > prev);
        prev = d;
    }
    // Beyond pi the infimum saturates at the apex value.
    CHECK(distance({1.0, 0.0}, {1.4, 3.5}, u).infimum == doctest::Approx(2.4));
    CHECK(distance({1.0, 0.0}, {1.4, 6.0}, u).infimum == doctest::Approx(2.4));
    CHECK(prev < 2.4);
}

// ===== convexity =====

TEST_CASE("geodesic convexity verdicts") {
    SUBCASE("wrapped cones below the full angle are convex") {
        CHECK(is_geodesically_convex(ConeGeometry::base(2.0)).convex == Trilean::Yes);
        CHECK(is_geodesically_convex(ConeGeometry::from_slope(0.5)).convex == Trilean::Yes);
        // Sharper regime: total angle between pi and 2*pi is still convex.
        CHECK(is_geodesically_convex(ConeGeometry::base(5.9)).convex == Trilean::Yes);
        CHECK(is_geodesically_convex(ConeGeometry::cyclic_cover(2.0, 2)).convex ==
              Trilean::Yes);
    }
    SUBCASE("universal cover fails with a concrete witness") {
        const auto u = ConeGeometry::universal_cover();
        const auto res = is_geodesically_convex(u);
        CHECK(res.convex == Trilean::No);
        REQUIRE(res.witness.has_value());
        const auto d = distance(res.witness->first, res.witness->second, u);
        CHECK(d.attained == Trilean::No);
        CHECK(d.infimum == doctest::Approx(2.0));
    }
    SUBCASE("covers of full angle or more fail") {
        const auto big = ConeGeometry::cyclic_cover(2.81, 3);
        const auto res = is_geodesically_convex(big);
        CHECK(res.convex == Trilean::No);
        REQUIRE(res.witness.has_value());
        const auto d = distance(res.witness->first, res.witness->second, big);
        CHECK(d.attained == Trilean::No);
    }
    SUBCASE("band at the full angle is undecided") {
        const auto g = ConeGeometry::cyclic_cover(kPi, 2); // total angle 2*pi
        CHECK(is_geodesically_convex(g).convex == Trilean::Undecided);
    }
}

// ===== mesh oracle =====

namespace {

struct OracleSweep {
    int agreeing = 0;
    int total = 0;
    double worst_error = 0.0;
};

OracleSweep sweep(const ConeGeometry& g, int n, double resolution, std::uint64_t seed,
                  double psi_span = 2.2) {
    OracleSweep s;
    constexpr double kC = 2.0;
    for (int i = 0; i < n; ++i) {
        auto rng = rng_for(seed, i);
        const auto p = sample_in(rng, g, 0.5, 2.0, psi_span);
        const auto q = sample_in(rng, g, 0.5, 2.0, psi_span);
        const auto exact = distance(p, q, g);
        const auto stats = oracle_distance_stats(p, q, g, resolution);
        const double bound = kC * (resolution + stats.r_inner);
        const double err = std::fabs(stats.length - exact.infimum);
        s.worst_error = std::max(s.worst_error, err);
        ++s.total;
        if (err <= bound) ++s.agreeing;
        // The mesh path is an actual curve, so it can never undercut the
        // infimum by more than floating-point noise.
        CHECK(stats.length >= exact.infimum - 1e-9);
    }
    return s;
}

} // namespace

TEST_CASE("mesh oracle agrees with the analytic distance") {
    const double res = 0.08;
    SUBCASE("reference cone") {
        const auto s = sweep(ConeGeometry::from_slope(0.5), 100, res, 11);
        CHECK(s.agreeing == s.total);
    }
    SUBCASE("wide cone between pi and full angle") {
        const auto s = sweep(ConeGeometry::base(5.0), 100, res, 12);
        CHECK(s.agreeing == s.total);
    }
    SUBCASE("double cover") {
        const auto s = sweep(ConeGeometry::cyclic_cover(2.8099258924, 2), 100, res, 13);
        CHECK(s.agreeing == s.total);
    }
    SUBCASE("universal cover") {
        const auto s = sweep(ConeGeometry::universal_cover(), 100, res, 14);
        CHECK(s.agreeing == s.total);
    }
}

TEST_CASE("mesh oracle confirms apex-route infima") {
    const auto u = ConeGeometry::universal_cover();
    for (int i = 0; i < 25; ++i) {
        auto rng = rng_for(21, i);
        const ConePoint p{log_uniform(rng, 0.5, 2.0), 0.0};
        const ConePoint q{log_uniform(rng, 0.5, 2.0), uniform_in(rng, 3.3, 6.0)};
        const auto exact = distance(p, q, u);
        REQUIRE(exact.attained == Trilean::No);
        const auto stats = oracle_distance_stats(p, q, u, 0.05);
        const double bound = 2.0 * (0.05 + stats.r_inner);
        CHECK(stats.length >= p.r + q.r - 1e-9);
        CHECK(stats.length <= p.r + q.r + bound);
    }
}

TEST_CASE("mesh oracle error shrinks with resolution") {
    const auto g = ConeGeometry::base(5.0);
    double prev_bound = 1e9;
    for (const double res : {0.16, 0.08, 0.04}) {
        const auto s = sweep(g, 15, res, 31, 2.4);
        const double bound = 2.0 * (res + 1e-3 * 2.0);
        CHECK(s.agreeing == s.total);
        CHECK(s.worst_error <= bound);
        CHECK(bound < prev_bound);
        prev_bound = bound;
    }
}

TEST_CASE("mesh oracle input guards") {
    const auto u = ConeGeometry::universal_cover();
    CHECK_THROWS_AS(oracle_distance({1, 0}, {1, 1}, u, 0.0), std::domain_error);
    CHECK_THROWS_AS(oracle_distance({1, 0}, {1, 1}, u, -0.1), std::domain_error);
    CHECK_THROWS_AS(oracle_distance({0, 0}, {1, 1}, u, 0.1), std::domain_error);
    CHECK(oracle_distance({1.0, 0.5}, {1.0, 0.5}, u, 0.1) == 0.0);
}
