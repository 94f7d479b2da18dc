#pragma once

/**
 * Shared result types for base (Riemannian) geometries feeding the static
 * causality layer.  A base geometry reports distance infima together with an
 * attainment certificate; whether the infimum is realized by a minimizer is
 * exactly the information the causal classification needs.
 */

#include <optional>
#include <utility>

#include "causalgeo/trilean.hpp"

namespace causalgeo {

// Outcome of a distance computation on a base geometry.
//  - attained == Yes:   a minimizing geodesic exists; `winding` holds the
//                       angular representative it uses (geometry specific).
//  - attained == No:    no minimizer; the infimum is only approached.
//  - attained == Undecided: existence of a minimizer cannot be certified at
//                       the working tolerance.
struct GeodesicResult {
    double infimum = 0.0;
    Trilean attained = Trilean::Undecided;
    std::optional<int> winding;

    bool apex_route() const { return !winding.has_value(); }
};

// Verdict of a geodesic convexity test.  When `convex` is not Yes a witness
// pair whose connecting infimum is not attained (or not certifiable) is given.
template <class P>
struct ConvexityOutcome {
    Trilean convex = Trilean::Undecided;
    std::optional<std::pair<P, P>> witness;
};

} // namespace causalgeo
