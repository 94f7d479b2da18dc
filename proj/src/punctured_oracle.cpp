#include "causalgeo/punctured_oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace causalgeo {

namespace {

struct Layout {
    Rational res;
    Rational delta;
    long long m1 = 0, m2 = 0; // hop counts below / above the axis
    Rational h1, h2;          // layer heights below / above
    long long j_lo = 0, j_hi = 0;

    long long clamp_j(long long j) const { return std::clamp(j, j_lo, j_hi); }
    std::size_t slot(long long j) const { return static_cast<std::size_t>(j - j_lo); }
    std::size_t size() const { return static_cast<std::size_t>(j_hi - j_lo + 1); }
};

long long to_ll(const BigInt& v) { return static_cast<long long>(v); }

// Dilate the reachable set by w index steps on each side.
void dilate(std::vector<char>& cur, long long w) {
    if (w <= 0) return;
    const long long n = static_cast<long long>(cur.size());
    std::vector<long long> ps(n + 1, 0);
    for (long long i = 0; i < n; ++i) ps[i + 1] = ps[i] + (cur[i] ? 1 : 0);
    for (long long i = 0; i < n; ++i) {
        const long long a = std::max<long long>(0, i - w);
        const long long b = std::min<long long>(n, i + w + 1);
        cur[i] = ps[b] - ps[a] > 0;
    }
}

// Mark true every j with |j*res - center| <= radius.
void mark_ball(std::vector<char>& cur, const Layout& L, const Rational& center,
               const Rational& radius) {
    const long long jmin = L.clamp_j(to_ll(rat_ceil((center - radius) / L.res)));
    const long long jmax = L.clamp_j(to_ll(rat_floor((center + radius) / L.res)));
    for (long long j = jmin; j <= jmax; ++j) cur[L.slot(j)] = 1;
}

bool any_in_ball(const std::vector<char>& cur, const Layout& L, const Rational& center,
                 const Rational& radius) {
    const long long jmin = L.clamp_j(to_ll(rat_ceil((center - radius) / L.res)));
    const long long jmax = L.clamp_j(to_ll(rat_floor((center + radius) / L.res)));
    for (long long j = jmin; j <= jmax; ++j)
        if (cur[L.slot(j)]) return true;
    return false;
}

// Restrict the axis layer to admissible crossing positions.
void filter_axis(std::vector<char>& cur, const Layout& L,
                 const std::optional<Gap>& sheet, bool strict) {
    if (sheet) {
        long long jmin = L.j_lo;
        long long jmax = L.j_hi;
        if (const auto lo = sheet->lower()) {
            jmin = strict ? to_ll(rat_floor(*lo / L.res)) + 1
                          : to_ll(rat_ceil((*lo - L.res) / L.res));
        }
        if (const auto hi = sheet->upper()) {
            jmax = strict ? to_ll(rat_ceil(*hi / L.res)) - 1
                          : to_ll(rat_floor((*hi + L.res) / L.res));
        }
        jmin = L.clamp_j(jmin);
        jmax = L.clamp_j(jmax);
        for (long long j = L.j_lo; j < jmin; ++j) cur[L.slot(j)] = 0;
        for (long long j = jmax + 1; j <= L.j_hi; ++j) cur[L.slot(j)] = 0;
        if (jmax < jmin) std::fill(cur.begin(), cur.end(), 0);
        return;
    }
    // Base query: the strict pass must dodge the punctures, which all lie in
    // [-1, 0]; the relaxed pass over-approximates and keeps everything.
    if (!strict) return;
    const long long jmin = L.clamp_j(to_ll(rat_ceil(Rational(-1) / L.res)));
    const long long jmax = L.clamp_j(to_ll(rat_floor(Rational(0) / L.res)));
    for (long long j = jmin; j <= jmax; ++j)
        if (cur[L.slot(j)] && punctures::is_puncture(Rational(j) * L.res))
            cur[L.slot(j)] = 0;
}

bool run_pass(const PlaneEvent& p, const PlaneEvent& q, const std::optional<Gap>& sheet,
              const GridOracleConfig& cfg, const Layout& L, bool strict) {
    // Per-hop speeds and slacks.  The strict pass underestimates light speed;
    // the relaxed pass overestimates it and adds one cell of snapping slack.
    const Rational speed = strict ? Rational(1) - L.delta : Rational(1) + L.delta;
    const Rational slack = strict ? Rational(0) : L.res;

    const long long w1 = strict ? to_ll(rat_floor(speed * L.h1 / L.res))
                                : to_ll(rat_floor(speed * L.h1 / L.res)) + 2;
    const long long w2 = strict ? to_ll(rat_floor(speed * L.h2 / L.res))
                                : to_ll(rat_floor(speed * L.h2 / L.res)) + 2;

    std::vector<char> cur(L.size(), 0);
    mark_ball(cur, L, p.x, cfg.p_ball + speed * L.h1 + slack);
    for (long long hop = 2; hop <= L.m1; ++hop) dilate(cur, w1);

    filter_axis(cur, L, sheet, strict);

    for (long long hop = 1; hop < L.m2; ++hop) dilate(cur, w2);
    return any_in_ball(cur, L, q.x, cfg.q_ball + speed * L.h2 + slack);
}

} // namespace

OracleAnswer oracle_grid_search(const PlaneEvent& p, const PlaneEvent& q,
                                const std::optional<Gap>& sheet,
                                const GridOracleConfig& cfg) {
    if (!(p.t < 0 && q.t > 0))
        throw unsupported_query("oracle_grid_search: supported query shape is t_p < 0 < t_q");
    if (!(cfg.resolution > 0))
        throw std::domain_error("oracle_grid_search: resolution must be positive");

    Layout L;
    L.res = cfg.resolution;
    L.delta = cfg.slope_margin > 0 ? cfg.slope_margin : cfg.resolution;
    const Rational layer =
        cfg.layer_height > 0 ? cfg.layer_height : Rational(250) * cfg.resolution;

    const Rational T1 = -p.t;
    const Rational T2 = q.t;
    L.m1 = std::max<long long>(2, to_ll(rat_ceil(T1 / layer)));
    L.m2 = std::max<long long>(2, to_ll(rat_ceil(T2 / layer)));
    L.h1 = T1 / L.m1;
    L.h2 = T2 / L.m2;

    const Rational span = T1 + T2 + cfg.p_ball + cfg.q_ball + 1;
    const Rational lo_x = (p.x < q.x ? p.x : q.x) - span;
    const Rational hi_x = (p.x > q.x ? p.x : q.x) + span;
    L.j_lo = to_ll(rat_floor(lo_x / L.res)) - 1;
    L.j_hi = to_ll(rat_ceil(hi_x / L.res)) + 1;

    const long long cells = (L.j_hi - L.j_lo + 1) * (L.m1 + L.m2);
    if (cells > cfg.max_cells) return OracleAnswer::Inconclusive;

    if (run_pass(p, q, sheet, cfg, L, /*strict=*/true)) return OracleAnswer::Yes;
    if (!run_pass(p, q, sheet, cfg, L, /*strict=*/false)) return OracleAnswer::No;
    return OracleAnswer::Inconclusive;
}

} // namespace causalgeo
