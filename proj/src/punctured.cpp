#include "causalgeo/punctured.hpp"

#include <stdexcept>

namespace causalgeo {

namespace {

void require_off_axis(const PlaneEvent& e, const char* who) {
    if (e.t == 0)
        throw std::domain_error(std::string(who) + ": event sits on the axis t = 0");
}

void require_crossing(const PlaneEvent& p, const PlaneEvent& q, const char* who) {
    if (!(p.t < 0 && q.t > 0))
        throw unsupported_query(std::string(who) +
                                ": supported query shape is t_p < 0 < t_q");
}

} // namespace

// ===== punctures =====

namespace punctures {

Rational position(long long k) {
    if (k < 0) throw std::domain_error("punctures::position: index must be >= 0");
    if (k == 0) return Rational(0);
    return Rational(-1, k);
}

bool is_puncture(const Rational& x) {
    if (x == 0) return true;
    // -1/k is canonically numerator -1, denominator k.
    return numerator(x) == -1;
}

} // namespace punctures

// ===== gaps =====

Gap Gap::mid(long long k) {
    if (k < 1) throw std::domain_error("Gap::mid: index must be >= 1");
    return Gap(Kind::Mid, k);
}

long long Gap::index() const {
    if (kind_ != Kind::Mid)
        throw std::domain_error("Gap::index: only Mid gaps carry an index");
    return k_;
}

std::optional<Rational> Gap::lower() const {
    switch (kind_) {
        case Kind::Left: return std::nullopt;
        case Kind::Mid: return Rational(-1, k_);
        default: return Rational(0);
    }
}

std::optional<Rational> Gap::upper() const {
    switch (kind_) {
        case Kind::Left: return Rational(-1);
        case Kind::Mid: return Rational(-1, k_ + 1);
        default: return std::nullopt;
    }
}

std::string Gap::name() const {
    switch (kind_) {
        case Kind::Left: return "left";
        case Kind::Mid: return "mid(" + std::to_string(k_) + ")";
        default: return "right";
    }
}

Gap gap_containing(const Rational& x) {
    if (punctures::is_puncture(x))
        throw std::domain_error("gap_containing: position is a puncture");
    if (x > 0) return Gap::right();
    if (x < -1) return Gap::left();
    // x in (-1, 0), not of the form -1/k: the index is floor(-1/x).
    const BigInt k = rat_floor(Rational(-1) / x);
    return Gap::mid(static_cast<long long>(k));
}

// ===== intervals =====

AxisInterval AxisInterval::meet(const AxisInterval& a, const AxisInterval& b) {
    AxisInterval r;
    if (a.lo > b.lo) {
        r.lo = a.lo;
        r.lo_closed = a.lo_closed;
    } else if (b.lo > a.lo) {
        r.lo = b.lo;
        r.lo_closed = b.lo_closed;
    } else {
        r.lo = a.lo;
        r.lo_closed = a.lo_closed && b.lo_closed;
    }
    if (a.hi < b.hi) {
        r.hi = a.hi;
        r.hi_closed = a.hi_closed;
    } else if (b.hi < a.hi) {
        r.hi = b.hi;
        r.hi_closed = b.hi_closed;
    } else {
        r.hi = a.hi;
        r.hi_closed = a.hi_closed && b.hi_closed;
    }
    return r;
}

AxisInterval clip_to_gap(AxisInterval w, const Gap& g) {
    if (const auto lo = g.lower()) {
        if (w.lo < *lo) {
            w.lo = *lo;
            w.lo_closed = false;
        } else if (w.lo == *lo) {
            w.lo_closed = false;
        }
    }
    if (const auto hi = g.upper()) {
        if (w.hi > *hi) {
            w.hi = *hi;
            w.hi_closed = false;
        } else if (w.hi == *hi) {
            w.hi_closed = false;
        }
    }
    return w;
}

// ===== cover points =====

CoverPoint CoverPoint::anchor(PlaneEvent e) {
    if (e.t == 0 && punctures::is_puncture(e.x))
        throw std::domain_error("CoverPoint: event is a puncture");
    return CoverPoint{std::move(e), std::nullopt};
}

CoverPoint CoverPoint::on_sheet(PlaneEvent e, Gap g) {
    if (e.t == 0 && punctures::is_puncture(e.x))
        throw std::domain_error("CoverPoint: event is a puncture");
    return CoverPoint{std::move(e), g};
}

// ===== gap sets =====

bool GapSet::contains(const Gap& g) const {
    switch (g.kind()) {
        case Gap::Kind::Left: return left;
        case Gap::Kind::Right: return right;
        default: break;
    }
    if (!has_mids) return false;
    const BigInt k = g.index();
    if (k < mid_lo) return false;
    return mid_tail || k <= mid_hi;
}

long long GapSet::count_mids_up_to(long long k_max) const {
    if (!has_mids || mid_lo > k_max) return 0;
    const BigInt hi = mid_tail ? BigInt(k_max) : (mid_hi < k_max ? mid_hi : BigInt(k_max));
    const BigInt n = hi - mid_lo + 1;
    return n > 0 ? static_cast<long long>(n) : 0;
}

// ===== relations =====

AxisInterval window(const PlaneEvent& p, bool strict) {
    require_off_axis(p, "window");
    const Rational radius = rat_abs(p.t);
    return {p.x - radius, p.x + radius, !strict, !strict};
}

bool chron_base(const PlaneEvent& p, const PlaneEvent& q) {
    require_off_axis(p, "chron_base");
    require_off_axis(q, "chron_base");
    if (q.t <= p.t) return false;
    if (p.t < 0 && q.t > 0) {
        // Crossing case: some strictly admissible crossing position exists.
        // Punctures cannot obstruct this: they are countable and the window
        // overlap is an open interval.
        return !AxisInterval::meet(window(p, true), window(q, true)).is_empty();
    }
    // Same-sign case: the segment never meets the axis.
    return rat_abs(q.x - p.x) < q.t - p.t;
}

GapSet gaps_reachable(const PlaneEvent& p, const PlaneEvent& q) {
    require_crossing(p, q, "gaps_reachable");
    GapSet out;
    const AxisInterval w = AxisInterval::meet(window(p, true), window(q, true));
    if (w.is_empty()) return out;

    out.left = w.lo < -1;
    out.right = w.hi > 0;

    // Mid gaps live in (-1, 0); clip the overlap to that band.
    const Rational lo = w.lo > -1 ? w.lo : Rational(-1);
    const Rational hi = w.hi < 0 ? w.hi : Rational(0);
    if (!(lo < hi)) return out;

    // Smallest k with -1/(k+1) > lo, i.e. k + 1 > -1/lo.
    BigInt k_lo = 1;
    if (lo > -1) k_lo = rat_floor(Rational(-1) / lo); // = smallest such k
    if (k_lo < 1) k_lo = 1;

    if (hi == 0) {
        out.has_mids = true;
        out.mid_lo = k_lo;
        out.mid_tail = true;
        return out;
    }
    // Largest k with -1/k < hi, i.e. k < -1/hi.
    const Rational q_hi = Rational(-1) / hi;
    BigInt k_hi = rat_ceil(q_hi) - 1; // largest integer strictly below q_hi
    if (k_hi >= k_lo) {
        out.has_mids = true;
        out.mid_lo = k_lo;
        out.mid_hi = k_hi;
    }
    return out;
}

namespace {

void require_anchored_pair(const CoverPoint& p, const CoverPoint& q, const char* who) {
    require_crossing(p.event, q.event, who);
    if (p.sheet.has_value())
        throw unsupported_query(std::string(who) +
                                ": the past endpoint must be the anchor lift (no sheet)");
    if (!q.sheet.has_value())
        throw unsupported_query(std::string(who) +
                                ": the future endpoint needs a sheet tag");
}

} // namespace

bool lifted_chron(const CoverPoint& p, const CoverPoint& q) {
    require_anchored_pair(p, q, "lifted_chron");
    return gaps_reachable(p.event, q.event).contains(*q.sheet);
}

bool in_closure_future(const CoverPoint& p, const CoverPoint& q) {
    require_anchored_pair(p, q, "in_closure_future");
    const AxisInterval strict_side = clip_to_gap(window(p.event, true), *q.sheet);
    return !AxisInterval::meet(strict_side.closure(), window(q.event, false)).is_empty();
}

bool in_closure_past(const CoverPoint& p, const CoverPoint& q) {
    require_anchored_pair(p, q, "in_closure_past");
    const AxisInterval strict_side = clip_to_gap(window(q.event, true), *q.sheet);
    return !AxisInterval::meet(strict_side.closure(), window(p.event, false)).is_empty();
}

bool base_in_closure_future(const PlaneEvent& p, const PlaneEvent& q) {
    require_crossing(p, q, "base_in_closure_future");
    return !AxisInterval::meet(window(p, true).closure(), window(q, false)).is_empty();
}

bool base_in_closure_past(const PlaneEvent& p, const PlaneEvent& q) {
    require_crossing(p, q, "base_in_closure_past");
    return !AxisInterval::meet(window(q, true).closure(), window(p, false)).is_empty();
}

// ===== per-sheet reflectivity table =====

ReflectivityTable reflectivity_report(const PlaneEvent& p, const PlaneEvent& q,
                                      long long k_max) {
    require_crossing(p, q, "reflectivity_report");
    if (k_max < 1)
        throw std::domain_error("reflectivity_report: k_max must be >= 1");

    ReflectivityTable table;
    table.p = p;
    table.q = q;
    table.k_max = k_max;
    table.base_future = base_in_closure_future(p, q);
    table.base_past = base_in_closure_past(p, q);
    table.base_violated = table.base_future && !table.base_past;

    const CoverPoint anchor = CoverPoint::anchor(p);
    const auto add_row = [&](const Gap& g) {
        SheetRow row;
        row.gap = g;
        const CoverPoint lifted = CoverPoint::on_sheet(q, g);
        row.future = in_closure_future(anchor, lifted);
        row.past = in_closure_past(anchor, lifted);
        row.violated = row.future && !row.past;
        if (row.future) ++table.futures_true;
        if (row.past) ++table.pasts_true;
        if (row.violated) table.violating.push_back(g);
        table.rows.push_back(row);
    };

    table.rows.reserve(static_cast<std::size_t>(k_max) + 2);
    add_row(Gap::right());
    add_row(Gap::left());
    for (long long k = 1; k <= k_max; ++k) add_row(Gap::mid(k));
    return table;
}

} // namespace causalgeo
