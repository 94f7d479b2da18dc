#include "causalgeo/cone.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "causalgeo/sampling.hpp"

namespace causalgeo {

namespace {

constexpr double kPi = std::numbers::pi;

void require_radius(const ConePoint& p, const char* who) {
    if (!(p.r > 0.0) || !std::isfinite(p.r) || !std::isfinite(p.psi))
        throw std::domain_error(std::string(who) + ": cone points need finite r > 0");
}

// Stable law of cosines: chord^2 = (r_p - r_q)^2 + 4 r_p r_q sin^2(dpsi/2).
// Accurate for nearly coincident points, exactly symmetric in (r_p, r_q) and
// even in dpsi.
double chord(double r_p, double r_q, double dpsi) {
    const double s = std::sin(0.5 * dpsi);
    return std::hypot(r_p - r_q, 2.0 * std::sqrt(r_p * r_q) * s);
}

} // namespace

// ===== geometry construction =====

double sector_angle(double slope) {
    if (!(slope > 0.0) || !std::isfinite(slope))
        throw std::domain_error("sector_angle: slope must be a finite positive number");
    return 2.0 * slope * kPi / std::sqrt(1.0 + slope * slope);
}

ConeGeometry ConeGeometry::base(double total_angle) {
    if (!(total_angle > 0.0) || !(total_angle < 2.0 * kPi))
        throw std::domain_error("ConeGeometry::base: total angle must lie in (0, 2*pi)");
    return ConeGeometry(ConeKind::BaseCone, total_angle, 1);
}

ConeGeometry ConeGeometry::from_slope(double slope) {
    return base(sector_angle(slope));
}

ConeGeometry ConeGeometry::cyclic_cover(double base_angle, int fold) {
    if (!(base_angle > 0.0) || !(base_angle < 2.0 * kPi))
        throw std::domain_error("ConeGeometry::cyclic_cover: base angle must lie in (0, 2*pi)");
    if (fold < 1)
        throw std::domain_error("ConeGeometry::cyclic_cover: fold must be >= 1");
    return ConeGeometry(fold == 1 ? ConeKind::BaseCone : ConeKind::CyclicCover,
                        base_angle, fold);
}

ConeGeometry ConeGeometry::universal_cover() {
    return ConeGeometry(ConeKind::UniversalCover,
                        std::numeric_limits<double>::quiet_NaN(), 0);
}

double ConeGeometry::total_angle() const {
    if (!wrapped())
        throw std::domain_error("ConeGeometry::total_angle: universal cover has no total angle");
    return base_angle_ * fold_;
}

int ConeGeometry::fold() const {
    if (!wrapped())
        throw std::domain_error("ConeGeometry::fold: universal cover has no finite fold");
    return fold_;
}

double ConeGeometry::base_angle() const {
    if (!wrapped())
        throw std::domain_error("ConeGeometry::base_angle: universal cover has no base angle");
    return base_angle_;
}

double ConeGeometry::reduce_angle(double psi) const {
    if (!wrapped()) return psi;
    const double theta = total_angle();
    double m = std::fmod(psi, theta);
    if (m < 0.0) m += theta;
    return m;
}

GeodesicResult ConeGeometry::distance(const ConePoint& p, const ConePoint& q,
                                      const Tolerance& tol) const {
    return causalgeo::distance(p, q, *this, tol);
}

ConvexityResult ConeGeometry::convexity(const Tolerance& tol) const {
    return is_geodesically_convex(*this, tol);
}

// ===== developed picture =====

double developed_separation(const ConePoint& p, const ConePoint& q, int w,
                            const ConeGeometry& geom) {
    require_radius(p, "developed_separation");
    require_radius(q, "developed_separation");
    if (!geom.wrapped()) {
        if (w != 0)
            throw std::domain_error(
                "developed_separation: universal cover admits only the w = 0 representative");
        return q.psi - p.psi;
    }
    return geom.reduce_angle(q.psi) - geom.reduce_angle(p.psi) +
           static_cast<double>(w) * geom.total_angle();
}

SegmentOutcome segment_length(double r_p, double r_q, double dpsi,
                              const Tolerance& tol) {
    if (!(r_p > 0.0) || !(r_q > 0.0))
        throw std::domain_error("segment_length: radii must be positive");
    switch (tol.less(std::fabs(dpsi), kPi)) {
        case Trilean::Yes:
            return {chord(r_p, r_q, dpsi), Trilean::Yes};
        case Trilean::No:
            return {r_p + r_q, Trilean::No};
        default:
            return {r_p + r_q, Trilean::Undecided};
    }
}

// ===== distance =====

GeodesicResult distance(const ConePoint& p, const ConePoint& q,
                        const ConeGeometry& geom, const Tolerance& tol) {
    require_radius(p, "distance");
    require_radius(q, "distance");

    double dpsi0;
    int w_max;
    double theta = 0.0;
    if (geom.wrapped()) {
        theta = geom.total_angle();
        dpsi0 = geom.reduce_angle(q.psi) - geom.reduce_angle(p.psi);
        w_max = static_cast<int>(std::ceil(kPi / theta)) + 1;
    } else {
        dpsi0 = q.psi - p.psi;
        w_max = 0;
    }

    bool found = false;
    bool band_hit = false;
    double best = std::numeric_limits<double>::infinity();
    int best_w = 0;

    for (int w = -w_max; w <= w_max; ++w) {
        const double dpsi = dpsi0 + static_cast<double>(w) * theta;
        switch (tol.less(std::fabs(dpsi), kPi)) {
            case Trilean::Yes: {
                const double len = chord(p.r, q.r, dpsi);
                // Ties broken toward the representative with smaller |w|,
                // keeping the result symmetric under swapping p and q.
                if (!found || len < best ||
                    (len == best && std::abs(w) < std::abs(best_w))) {
                    found = true;
                    best = len;
                    best_w = w;
                }
                break;
            }
            case Trilean::Undecided:
                band_hit = true;
                break;
            case Trilean::No:
                break;
        }
    }

    if (found) return {best, Trilean::Yes, best_w};
    if (band_hit) return {p.r + q.r, Trilean::Undecided, std::nullopt};
    return {p.r + q.r, Trilean::No, std::nullopt};
}

// ===== convexity =====

ConvexityResult is_geodesically_convex(const ConeGeometry& geom,
                                       const Tolerance& tol) {
    if (!geom.wrapped()) {
        // Opposite unit-circle points with opening 3*pi/2: every representative
        // of the pair (there is only one) exceeds pi, so no minimizer exists.
        return {Trilean::No,
                std::make_pair(ConePoint{1.0, 0.0}, ConePoint{1.0, 1.5 * kPi})};
    }
    const double theta = geom.total_angle();
    // Wrapped cone: a minimizing chord exists for every pair exactly when the
    // total angle stays below 2*pi (antipodal openings then stay below pi).
    // At or above 2*pi the half-way pair on the unit circle has every
    // representative at opening >= pi.
    switch (tol.less(theta, 2.0 * kPi)) {
        case Trilean::Yes:
            return {Trilean::Yes, std::nullopt};
        case Trilean::No:
            return {Trilean::No,
                    std::make_pair(ConePoint{1.0, 0.0}, ConePoint{1.0, 0.5 * theta})};
        default:
            return {Trilean::Undecided,
                    std::make_pair(ConePoint{1.0, 0.0}, ConePoint{1.0, 0.5 * theta})};
    }
}

// ===== sampling =====

ConePoint sample_point(const ConeGeometry& geom, std::mt19937_64& rng,
                       const ConeSampleWindow& window) {
    ConePoint p;
    p.r = log_uniform(rng, window.r_lo, window.r_hi);
    if (geom.wrapped())
        p.psi = uniform_in(rng, 0.0, geom.total_angle());
    else
        p.psi = uniform_in(rng, -window.psi_span, window.psi_span);
    return p;
}

} // namespace causalgeo
