#pragma once

/**
 * Mesh oracle for cone distances.  Builds a polar graph on the truncated
 * geometry (a thin annulus around the apex and everything beyond a few times
 * the query radii are cut off), runs Dijkstra over local chord edges, and then
 * straightens the returned polyline by a chord-shortcut pass that is allowed
 * to dip inside the truncation ring but never to sweep an angle of pi or
 * more.  The result is an upper bound on the true distance that converges to
 * it as the resolution shrinks; the expected error scale is
 * C * (resolution + r_inner) with a small constant C.
 *
 * The oracle shares no logic with the analytic distance routine: it never
 * enumerates winding representatives and never tests |dpsi| against pi for
 * the query pair.  Topology is discovered by the graph search alone.
 */

#include <cstddef>

#include "causalgeo/cone.hpp"

namespace causalgeo {

struct MeshStats {
    double length = 0.0;      // best path length after the shortcut pass
    double raw_length = 0.0;  // plain Dijkstra length
    std::size_t nodes = 0;
    std::size_t path_vertices = 0;
    double r_inner = 0.0;     // apex truncation radius used
};

// Shortest-path estimate between p and q on the meshed geometry.
// resolution is the target edge length of the mesh; it must be positive.
// Throws std::domain_error on invalid inputs and std::invalid_argument when
// the requested mesh would exceed the node budget.
double oracle_distance(const ConePoint& p, const ConePoint& q,
                       const ConeGeometry& geom, double resolution);

// Same computation with mesh diagnostics.
MeshStats oracle_distance_stats(const ConePoint& p, const ConePoint& q,
                                const ConeGeometry& geom, double resolution);

} // namespace causalgeo
