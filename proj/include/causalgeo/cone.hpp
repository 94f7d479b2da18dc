#pragma once

/**
 * Intrinsic geometry of the flat cone of total angle Theta: the Riemannian
 * surface (0,inf) x R/(Theta Z) with metric dr^2 + r^2 dpsi^2, together with
 * its finite cyclic covers and its universal cover (the half-plane r > 0,
 * psi unrestricted).  The apex r = 0 is not part of the manifold; metric
 * completeness therefore fails, and distance infima need not be attained.
 *
 * All lengths are computed in the developed picture: a shortest curve that
 * stays away from the apex unrolls to a straight chord with angular opening
 * |dpsi| < pi.  When every angular representative of a pair has |dpsi| >= pi
 * the infimum r_p + r_q is approached by paths hugging the apex and is not
 * attained by any curve in the manifold.
 */

#include <random>

#include "causalgeo/geometry_core.hpp"
#include "causalgeo/trilean.hpp"

namespace causalgeo {

// Total opening angle of the cone obtained by cutting the graph of the
// Euclidean cone z = |x|/A out of 3-space and flattening it: 2*A*pi/sqrt(1+A^2).
// Requires A > 0; the result lies in (0, 2*pi).
double sector_angle(double slope);

// Point in polar coordinates (r, psi) with r > 0.  For wrapped geometries psi
// is taken modulo the total angle; on the universal cover psi is an arbitrary
// real and encodes the sheet.
struct ConePoint {
    double r = 1.0;
    double psi = 0.0;
};

enum class ConeKind { BaseCone, CyclicCover, UniversalCover };

using ConvexityResult = ConvexityOutcome<ConePoint>;

// Length of the developed segment between radii (r_p, r_q) at angular opening
// dpsi.  `direct == Yes`: the chord avoids the apex and `length` is its exact
// length.  `direct == No`: |dpsi| >= pi, the straight segment would cross the
// removed apex; `length` falls back to the unattained infimum r_p + r_q.
struct SegmentOutcome {
    double length = 0.0;
    Trilean direct = Trilean::Undecided;
};

class ConeGeometry {
public:
    using Point = ConePoint;

    static ConeGeometry base(double total_angle);
    // Base cone of the embedded cone with slope parameter A.
    static ConeGeometry from_slope(double slope);
    // k-fold cyclic cover of the base cone of angle base_angle.
    static ConeGeometry cyclic_cover(double base_angle, int fold);
    static ConeGeometry universal_cover();

    ConeKind kind() const { return kind_; }
    bool wrapped() const { return kind_ != ConeKind::UniversalCover; }

    // Total angle of a wrapped geometry; throws std::domain_error for the
    // universal cover, whose angular coordinate is unbounded.
    double total_angle() const;

    // Cover multiplicity: 1 for the base cone, k for a k-fold cover.
    int fold() const;

    // Angle of the underlying base cone (total_angle / fold).
    double base_angle() const;

    // Reduce psi into [0, total_angle); identity on the universal cover.
    double reduce_angle(double psi) const;

    bool valid(const ConePoint& p) const { return p.r > 0.0; }

    // Members forwarding to the free functions, so the type models the
    // BaseGeometry interface used by the static-causality layer.
    GeodesicResult distance(const ConePoint& p, const ConePoint& q,
                            const Tolerance& tol = {}) const;
    ConvexityResult convexity(const Tolerance& tol = {}) const;

private:
    ConeGeometry(ConeKind k, double base_angle, int fold)
        : kind_(k), base_angle_(base_angle), fold_(fold) {}

    ConeKind kind_;
    double base_angle_; // NaN for the universal cover
    int fold_;
};

// Developed angular separation psi_q - psi_p + w * Theta of the winding-w
// representative.  On the universal cover only w == 0 is meaningful and any
// other value throws std::domain_error.
double developed_separation(const ConePoint& p, const ConePoint& q, int w,
                            const ConeGeometry& geom);

// Chord length at fixed angular opening; see SegmentOutcome.
SegmentOutcome segment_length(double r_p, double r_q, double dpsi,
                              const Tolerance& tol = {});

// Distance infimum between p and q with attainment certificate.  Minimizes
// the developed chord over all angular representatives |w| <= ceil(pi/Theta)+1
// (w = 0 only on the universal cover); representatives beyond that range
// cannot beat the apex route.
GeodesicResult distance(const ConePoint& p, const ConePoint& q,
                        const ConeGeometry& geom, const Tolerance& tol = {});

// Geodesic convexity of the geometry: every pair is joined by a minimizer
// precisely when the total angle is below 2*pi; the universal cover is never
// convex.  Witness pairs are constructed on the unit circle.
ConvexityResult is_geodesically_convex(const ConeGeometry& geom,
                                       const Tolerance& tol = {});

// Sampling window for randomized checks: log-uniform radii in [r_lo, r_hi],
// uniform angles (over one period on wrapped cones, over [-psi_span, psi_span]
// on the universal cover), uniform times in [-t_span/2, t_span/2].
struct ConeSampleWindow {
    double r_lo = 0.5;
    double r_hi = 2.0;
    double psi_span = 3.0 * 3.14159265358979323846;
    double t_span = 4.0;
};

ConePoint sample_point(const ConeGeometry& geom, std::mt19937_64& rng,
                       const ConeSampleWindow& window = {});

} // namespace causalgeo
