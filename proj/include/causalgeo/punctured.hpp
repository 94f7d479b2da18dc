#pragma once

/**
 * Exact chronology and closure relations in the punctured 2D Minkowski plane
 * M = R^{1,1} \ {(0,0)} u {(0,-1/k) : k >= 1} and the sheets of its universal
 * cover that are reachable by axis-crossing timelike curves.
 *
 * Every timelike curve is t-monotone, so a curve from t < 0 to t > 0 crosses
 * the axis exactly once, at some non-puncture position c.  The set of
 * admissible crossings is the intersection of two light-cone windows
 * |c - x| < |t|, and the homotopy class of the curve in M is exactly the gap
 * (connected component of the axis minus the punctures) containing c.  All
 * predicates are decided in exact rational arithmetic; this module has no
 * tolerance parameters.
 *
 * Closure relations are computed by the perturbed-endpoint rule: membership
 * q~ in cl(I+(p~)) holds iff crossings can stay strictly inside the open gap
 * and the open p-window while the q-window is allowed to close up in the
 * limit — and dually with the roles of p and q swapped.  The asymmetry of
 * that rule between the two time ends is what the per-sheet reflectivity
 * table exhibits.
 */

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "causalgeo/rational_util.hpp"

namespace causalgeo {

// Raised when a relation query falls outside the supported shape
// (t_p < 0 < t_q with sheets anchored to a fixed base lift).
class unsupported_query : public std::runtime_error {
public:
    explicit unsupported_query(const std::string& what) : std::runtime_error(what) {}
};

// Event (t, x) of the 2D plane with exact rational coordinates.
struct PlaneEvent {
    Rational t;
    Rational x;
};

// ===== punctures =====

// The punctures sit on the axis t = 0 at 0 and -1/k for k >= 1; they are
// addressed lazily through the index map and never materialized.
namespace punctures {

// position(0) = 0, position(k) = -1/k for k >= 1.
Rational position(long long k);

bool is_puncture(const Rational& x);

} // namespace punctures

// ===== gaps =====

// Connected component of the axis minus the punctures:
//   Left = (-inf, -1), Mid(k) = (-1/k, -1/(k+1)) for k >= 1, Right = (0, inf).
class Gap {
public:
    enum class Kind { Left, Mid, Right };

    static Gap left() { return Gap(Kind::Left, 0); }
    static Gap right() { return Gap(Kind::Right, 0); }
    static Gap mid(long long k);

    Kind kind() const { return kind_; }
    // Mid index; throws std::domain_error for Left/Right.
    long long index() const;

    // Finite endpoints where they exist (Left has no lower bound, Right no
    // upper bound).  Gaps are open intervals.
    std::optional<Rational> lower() const;
    std::optional<Rational> upper() const;

    bool operator==(const Gap& o) const { return kind_ == o.kind_ && k_ == o.k_; }
    bool operator!=(const Gap& o) const { return !(*this == o); }

    std::string name() const;

private:
    Gap(Kind kind, long long k) : kind_(kind), k_(k) {}
    Kind kind_;
    long long k_;
};

// Gap containing a non-puncture axis position; throws std::domain_error on a
// puncture.
Gap gap_containing(const Rational& x);

// ===== intervals =====

// Finite axis interval with per-end closedness; the workhorse of the exact
// window algebra.
struct AxisInterval {
    Rational lo, hi;
    bool lo_closed = false;
    bool hi_closed = false;

    bool is_empty() const {
        if (lo < hi) return false;
        if (lo > hi) return true;
        return !(lo_closed && hi_closed);
    }

    AxisInterval closure() const {
        if (is_empty()) return *this;
        return {lo, hi, true, true};
    }

    static AxisInterval meet(const AxisInterval& a, const AxisInterval& b);
};

// Intersection of a finite interval with an open gap.
AxisInterval clip_to_gap(AxisInterval w, const Gap& g);

// ===== cover points =====

// Event of the punctured plane together with its sheet tag on the universal
// cover.  Sheets are expressed relative to a fixed base lift: anchor points
// (no sheet) live in the distinguished lift of their half-plane; a point with
// sheet g is reached from the anchor by curves crossing the axis in gap g.
struct CoverPoint {
    PlaneEvent event;
    std::optional<Gap> sheet;

    static CoverPoint anchor(PlaneEvent e);
    static CoverPoint on_sheet(PlaneEvent e, Gap g);
};

// ===== reachable gap sets =====

// Set of gaps reachable by crossing curves for one event pair.  Monotone
// endpoint structure makes every such set a contiguous Mid range (possibly an
// infinite tail accumulating at 0) plus flags for the unbounded gaps.
struct GapSet {
    bool left = false;
    bool right = false;
    bool has_mids = false;
    BigInt mid_lo = 0;        // meaningful when has_mids
    bool mid_tail = false;    // true: all k >= mid_lo
    BigInt mid_hi = 0;        // meaningful when has_mids && !mid_tail

    bool contains(const Gap& g) const;
    bool empty() const { return !left && !right && !has_mids; }
    // Number of Mid sheets with index <= k_max in the set.
    long long count_mids_up_to(long long k_max) const;
};

// ===== relations =====

// Admissible axis-crossing window of an off-axis event: positions c with
// |c - x| < |t| (strict) or <= |t| (closed).  Throws std::domain_error for
// on-axis events.
AxisInterval window(const PlaneEvent& p, bool strict);

// Chronology q in I+(p) of the punctured plane.  Crossing pairs
// (t_p < 0 < t_q) reduce to open-window overlap — a countable puncture set
// cannot block an open interval; same-sign pairs never meet the axis and
// follow plain Minkowski chronology.  Returns false whenever t_q <= t_p.
bool chron_base(const PlaneEvent& p, const PlaneEvent& q);

// All gaps g admitting a timelike crossing curve from p to q through g;
// requires the crossing shape t_p < 0 < t_q.
GapSet gaps_reachable(const PlaneEvent& p, const PlaneEvent& q);

// Chronology on the cover: q~ in I+(p~) iff q~'s gap is reachable.  The
// supported shape is an anchored p~ (no sheet, t < 0) against a sheeted q~
// (t > 0); anything else raises unsupported_query.
bool lifted_chron(const CoverPoint& p, const CoverPoint& q);

// Closure membership q~ in cl(I+(p~)): crossings strictly inside the open gap
// and the open p-window, with the q-window relaxed to closed in the limit.
bool in_closure_future(const CoverPoint& p, const CoverPoint& q);

// Dual closure membership p~ in cl(I-(q~)): strict crossing constraints on
// the q side, closed relaxation on the p side.
bool in_closure_past(const CoverPoint& p, const CoverPoint& q);

// Base-spacetime closure relations of the same pair (no sheet constraint).
bool base_in_closure_future(const PlaneEvent& p, const PlaneEvent& q);
bool base_in_closure_past(const PlaneEvent& p, const PlaneEvent& q);

// ===== per-sheet reflectivity table =====

struct SheetRow {
    Gap gap = Gap::right();
    bool future = false;   // q~ in cl(I+(p~)) on this sheet
    bool past = false;     // p~ in cl(I-(q~)) on this sheet
    bool violated = false; // future && !past: past reflectivity fails here
};

struct ReflectivityTable {
    PlaneEvent p, q;
    long long k_max = 0;

    bool base_future = false;
    bool base_past = false;
    bool base_violated = false;

    std::vector<SheetRow> rows; // Right, Left, Mid(1) .. Mid(k_max)
    long long futures_true = 0;
    long long pasts_true = 0;
    std::vector<Gap> violating;
};

// Evaluate both closure relations on every sheet up to Mid(k_max), plus the
// sheet-agnostic base pair.  Requires the crossing shape.
ReflectivityTable reflectivity_report(const PlaneEvent& p, const PlaneEvent& q,
                                      long long k_max);

} // namespace causalgeo
