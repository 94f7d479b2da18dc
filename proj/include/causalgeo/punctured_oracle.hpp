#pragma once

/**
 * Brute-force path oracle for the punctured plane.  Searches t-monotone
 * piecewise-linear paths on a rational grid: a fine x-lattice of pitch
 * `resolution` crossed with a small number of tall time layers, so that
 * per-hop index windows can represent speeds arbitrarily close to light
 * speed.  The axis layer records where the path crosses, which pins the
 * homotopy class (the gap).
 *
 * Two passes bracket the truth:
 *  - strict pass: per-hop speed <= 1 - delta, crossing strictly inside the
 *    open gap and off every puncture.  Any path found is a genuine timelike
 *    curve realizing the class, so a hit certifies Yes.
 *  - relaxed pass: per-hop speed <= 1 + delta plus one cell of snapping
 *    slack, crossing window inflated by one cell.  Every true timelike path
 *    snaps onto an admissible relaxed path, so an empty relaxed search
 *    certifies No.
 * Disagreement (strict empty, relaxed non-empty) is reported Inconclusive;
 * boundary instances — exactly the closure-critical ones — stay undecided at
 * any finite resolution, which is the honest outcome.
 *
 * Endpoint balls relax one endpoint to a closed x-ball, which turns the
 * oracle into a probe of the closure relations: membership in cl(I+-) means
 * every ball around the perturbed endpoint is reachable, so a strict-pass
 * hit at ball radius >> resolution confirms the exact closure verdict.
 */

#include <optional>

#include "causalgeo/punctured.hpp"

namespace causalgeo {

enum class OracleAnswer { No, Yes, Inconclusive };

inline std::string to_string(OracleAnswer a) {
    switch (a) {
        case OracleAnswer::No: return "no";
        case OracleAnswer::Yes: return "yes";
        default: return "inconclusive";
    }
}

struct GridOracleConfig {
    Rational resolution = Rational(1, 1000);
    Rational slope_margin = 0;  // 0: defaults to resolution
    Rational layer_height = 0;  // 0: defaults to 250 * resolution
    Rational p_ball = 0;        // closed x-ball around p (closure probes)
    Rational q_ball = 0;        // closed x-ball around q
    long long max_cells = 60'000'000;
};

// Does a timelike path from p (t_p < 0) to q (t_q > 0) crossing the axis in
// `sheet` exist?  Empty sheet means any crossing off the punctures (base
// spacetime query).  Throws unsupported_query for non-crossing shapes.
OracleAnswer oracle_grid_search(const PlaneEvent& p, const PlaneEvent& q,
                                const std::optional<Gap>& sheet,
                                const GridOracleConfig& cfg = {});

} // namespace causalgeo
