#pragma once

/**
 * Causal structure of static product spacetimes (R x B, -dt^2 + g_B).  All
 * causal information reduces to the distance structure of the base B:
 *
 *   q in I+(p)      <=>  d(x_p, x_q)  <  t_q - t_p
 *   q in J+(p)      <=>  the infimum is attained and  d <= t_q - t_p
 *   q in cl(I+(p))  <=>  d(x_p, x_q) <=  t_q - t_p
 *
 * The delicate stratum is equality d = t_q - t_p: a minimizing geodesic of
 * length d turns it into a null relation (causal but not chronological); a
 * non-attained infimum leaves the pair related only through the closure.
 * That dichotomy is what connects causal simplicity of the product to
 * geodesic convexity of the base.
 *
 * This layer is generic over the base geometry.  A model type exposes
 * distance with attainment certificates and a convexity test; the flat cones
 * in cone.hpp are the primary models.
 */

#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "causalgeo/geometry_core.hpp"
#include "causalgeo/sampling.hpp"
#include "causalgeo/trilean.hpp"

namespace causalgeo {

template <class G>
concept BaseGeometry = requires(const G& g, const typename G::Point& a,
                                const typename G::Point& b, const Tolerance& tol) {
    typename G::Point;
    { g.distance(a, b, tol) } -> std::same_as<GeodesicResult>;
    { g.convexity(tol) } -> std::same_as<ConvexityOutcome<typename G::Point>>;
    { g.valid(a) } -> std::convertible_to<bool>;
};

// Event (t, x) of the static product over a base with point type P.
template <class P>
struct Event {
    double t = 0.0;
    P x{};
};

// Ladder of verdicts for an event pair, coarsest relation last:
//   Equal                  identical events
//   Chronological          timelike related (either time order)
//   CausalNotChronological null related: |dt| equals an attained distance
//   ClosureOnly            related only in the closure of J: |dt| equals a
//                          non-attained infimum
//   Unrelated              spacelike: |dt| certified below the infimum
//   Indeterminate          the comparison landed inside the tolerance band
//                          and no side could be certified
enum class CausalVerdict {
    Equal,
    Chronological,
    CausalNotChronological,
    ClosureOnly,
    Unrelated,
    Indeterminate,
};

inline std::string to_string(CausalVerdict v) {
    switch (v) {
        case CausalVerdict::Equal: return "equal";
        case CausalVerdict::Chronological: return "chronological";
        case CausalVerdict::CausalNotChronological: return "causal-not-chronological";
        case CausalVerdict::ClosureOnly: return "closure-only";
        case CausalVerdict::Unrelated: return "unrelated";
        default: return "indeterminate";
    }
}

template <class P>
struct Classification {
    CausalVerdict verdict = CausalVerdict::Indeterminate;
    double dt = 0.0;               // t_q - t_p (signed)
    GeodesicResult separation;     // base distance data for |dt| comparison
    double margin = 0.0;           // |dt| - infimum; sign tells which side won
};

// Classify the causal relation of the pair (p, q).  The time orientation of
// the pair does not affect the verdict; dt keeps the signed value.
template <BaseGeometry G>
Classification<typename G::Point> classify(const Event<typename G::Point>& p,
                                           const Event<typename G::Point>& q,
                                           const G& geom, const Tolerance& tol = {}) {
    Classification<typename G::Point> c;
    c.dt = q.t - p.t;

    const double tau = std::fabs(c.dt);
    c.separation = geom.distance(p.x, q.x, tol);
    c.margin = tau - c.separation.infimum;

    if (c.dt == 0.0 && c.separation.infimum == 0.0 &&
        c.separation.attained == Trilean::Yes) {
        c.verdict = CausalVerdict::Equal;
        return c;
    }

    switch (tol.less(c.separation.infimum, tau)) {
        case Trilean::Yes:
            c.verdict = CausalVerdict::Chronological;
            return c;
        case Trilean::No:
            c.verdict = CausalVerdict::Unrelated;
            return c;
        case Trilean::Undecided:
            break;
    }

    // Equality stratum |dt| ~ infimum.  Near-coincident pairs carry no usable
    // information; otherwise attainment decides the verdict.
    if (tau <= tol.eps) {
        c.verdict = CausalVerdict::Indeterminate;
        return c;
    }
    switch (c.separation.attained) {
        case Trilean::Yes:
            c.verdict = CausalVerdict::CausalNotChronological;
            break;
        case Trilean::No:
            c.verdict = CausalVerdict::ClosureOnly;
            break;
        default:
            c.verdict = CausalVerdict::Indeterminate;
            break;
    }
    return c;
}

// Closedness of the causal relation J of the static product, decided through
// geodesic convexity of the base.  A convexity witness (x, y) whose infimum L
// is not attained lifts to events p = (0, x), q = (L, y) with q in cl(J+(p))
// but not in J+(p).
template <BaseGeometry G>
struct ClosureCheck {
    Trilean closed = Trilean::Undecided;
    std::optional<std::pair<Event<typename G::Point>, Event<typename G::Point>>> witness;
    std::optional<Classification<typename G::Point>> witness_class;
};

template <BaseGeometry G>
ClosureCheck<G> is_causal_relation_closed(const G& geom, const Tolerance& tol = {}) {
    ClosureCheck<G> out;
    const auto conv = geom.convexity(tol);
    out.closed = conv.convex;
    if (conv.witness) {
        const auto& [x, y] = *conv.witness;
        const double L = geom.distance(x, y, tol).infimum;
        Event<typename G::Point> p{0.0, x};
        Event<typename G::Point> q{L, y};
        out.witness = std::make_pair(p, q);
        out.witness_class = classify(p, q, geom, tol);
    }
    return out;
}

// ===== reflectivity sampling =====

// One direction of the reflectivity property on a sampled pair:
//   q in cl(I+(p))  =>  p in cl(I-(q)).
// Membership in cl(I+-) is the closed comparison  d <= |dt| + eps; the two
// sides are evaluated with swapped distance arguments, so a violation can
// only arise from an asymmetry of the base distance.
template <class P>
struct ReflectivityViolation {
    std::size_t index = 0;
    Event<P> p, q;
    bool forward_member = false;   // q in cl(I+(p))
    bool backward_member = false;  // p in cl(I-(q))
};

template <class P>
struct ReflectivityReport {
    std::size_t checked = 0;
    std::uint64_t seed = 0;
    std::vector<ReflectivityViolation<P>> violations;

    bool clean() const { return violations.empty(); }
};

// Sample n event pairs with the given generator and test both reflectivity
// directions on each.  `gen(rng)` must return an Event<P>.
template <BaseGeometry G, class Gen>
ReflectivityReport<typename G::Point>
check_reflectivity_samples(const G& geom, std::size_t n, std::uint64_t seed, Gen&& gen,
                           const Tolerance& tol = {}) {
    using P = typename G::Point;
    ReflectivityReport<P> report;
    report.seed = seed;

    for (std::size_t i = 0; i < n; ++i) {
        auto rng = rng_for(seed, i);
        const Event<P> p = gen(rng);
        const Event<P> q = gen(rng);
        const double dt = q.t - p.t;

        // q in cl(I+(p)): forward distance; p in cl(I-(q)): swapped distance.
        const double fwd = geom.distance(p.x, q.x, tol).infimum;
        const double bwd = geom.distance(q.x, p.x, tol).infimum;
        const bool q_in_cl_future = fwd <= dt + tol.eps;
        const bool p_in_cl_past = bwd <= dt + tol.eps;
        // Time-reversed direction of the same pair.
        const bool q_in_cl_past = fwd <= -dt + tol.eps;
        const bool p_in_cl_future = bwd <= -dt + tol.eps;

        ++report.checked;
        if (q_in_cl_future != p_in_cl_past || q_in_cl_past != p_in_cl_future) {
            ReflectivityViolation<P> v;
            v.index = i;
            v.p = p;
            v.q = q;
            v.forward_member = q_in_cl_future;
            v.backward_member = p_in_cl_past;
            report.violations.push_back(v);
        }
    }
    return report;
}

} // namespace causalgeo
