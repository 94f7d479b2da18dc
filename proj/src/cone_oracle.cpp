#include "causalgeo/cone_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

namespace causalgeo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kNodeBudget = 6'000'000;

double chord(double r_a, double r_b, double dpsi) {
    const double s = std::sin(0.5 * dpsi);
    return std::hypot(r_a - r_b, 2.0 * std::sqrt(r_a * r_b) * s);
}

// 16 local directions: axis steps, diagonals and knight moves.  The knight
// moves cut the worst-case angular quantization of a mesh path to ~14 degrees.
constexpr int kMoves[16][2] = {
    {1, 0},  {-1, 0}, {0, 1},  {0, -1},  {1, 1},  {1, -1},  {-1, 1},  {-1, -1},
    {1, 2},  {1, -2}, {-1, 2}, {-1, -2}, {2, 1},  {2, -1},  {-2, 1},  {-2, -1}};

struct Mesh {
    int n_r = 0;
    int n_psi = 0;
    double r_lo = 0.0;
    double dr = 0.0;
    double psi_lo = 0.0; // universal cover only
    double dpsi = 0.0;
    bool wrap = false;

    std::size_t nodes() const {
        return static_cast<std::size_t>(n_r) * static_cast<std::size_t>(n_psi);
    }
    double radius(int i) const { return r_lo + i * dr; }
    double angle(int j) const { return (wrap ? 0.0 : psi_lo) + j * dpsi; }
    int wrap_j(int j) const {
        if (!wrap) return std::clamp(j, 0, n_psi - 1);
        j %= n_psi;
        return j < 0 ? j + n_psi : j;
    }
    bool valid_j(int j) const { return wrap || (j >= 0 && j < n_psi); }
    std::size_t id(int i, int j) const {
        return static_cast<std::size_t>(i) * n_psi + static_cast<std::size_t>(wrap_j(j));
    }
};

// Signed angular offset from `from` to `to`, folded into (-span/2, span/2]
// when the geometry wraps with period span.
double fold_angle(double delta, double span) {
    double d = std::fmod(delta, span);
    if (d > 0.5 * span) d -= span;
    if (d <= -0.5 * span) d += span;
    return d;
}

struct Terminal {
    double r;
    double psi;   // reduced angle for wrapped geometries
    int i0, j0;   // nearest mesh vertex
};

} // namespace

MeshStats oracle_distance_stats(const ConePoint& p, const ConePoint& q,
                                const ConeGeometry& geom, double resolution) {
    if (!(resolution > 0.0) || !std::isfinite(resolution))
        throw std::domain_error("oracle_distance: resolution must be positive");
    if (!(p.r > 0.0) || !(q.r > 0.0))
        throw std::domain_error("oracle_distance: cone points need r > 0");

    MeshStats stats;

    // Trivial coincidence (same point, or same reduced angle on a wrapped cone).
    const double psi_p = geom.wrapped() ? geom.reduce_angle(p.psi) : p.psi;
    const double psi_q = geom.wrapped() ? geom.reduce_angle(q.psi) : q.psi;
    if (p.r == q.r && psi_p == psi_q) return stats;

    // ===== mesh layout =====
    Mesh mesh;
    mesh.r_lo = 1e-3 * std::min(p.r, q.r);
    const double r_hi = 4.0 * std::max(p.r, q.r);
    mesh.n_r = std::max(3, static_cast<int>(std::ceil((r_hi - mesh.r_lo) / resolution)) + 1);
    mesh.dr = (r_hi - mesh.r_lo) / (mesh.n_r - 1);

    const double dpsi_target = resolution / r_hi;
    if (geom.wrapped()) {
        mesh.wrap = true;
        const double theta = geom.total_angle();
        mesh.n_psi = std::max(8, static_cast<int>(std::lround(theta / dpsi_target)));
        mesh.dpsi = theta / mesh.n_psi;
    } else {
        const double margin = 4.0 * dpsi_target;
        mesh.psi_lo = std::min(psi_p, psi_q) - margin;
        const double psi_hi = std::max(psi_p, psi_q) + margin;
        mesh.n_psi =
            std::max(8, static_cast<int>(std::ceil((psi_hi - mesh.psi_lo) / dpsi_target)) + 1);
        mesh.dpsi = (psi_hi - mesh.psi_lo) / (mesh.n_psi - 1);
    }
    if (mesh.nodes() > kNodeBudget)
        throw std::invalid_argument("oracle_distance: mesh exceeds the node budget; "
                                    "use a coarser resolution");
    stats.nodes = mesh.nodes();
    stats.r_inner = mesh.r_lo;

    const auto locate = [&](double r, double psi) {
        Terminal t;
        t.r = r;
        t.psi = psi;
        t.i0 = std::clamp(static_cast<int>(std::lround((r - mesh.r_lo) / mesh.dr)), 0,
                          mesh.n_r - 1);
        const double j_real = mesh.wrap ? psi / mesh.dpsi : (psi - mesh.psi_lo) / mesh.dpsi;
        t.j0 = mesh.wrap ? mesh.wrap_j(static_cast<int>(std::lround(j_real)))
                         : std::clamp(static_cast<int>(std::lround(j_real)), 0, mesh.n_psi - 1);
        return t;
    };
    const Terminal tp = locate(p.r, psi_p);
    const Terminal tq = locate(q.r, psi_q);

    const std::size_t src = mesh.nodes();
    const std::size_t dst = mesh.nodes() + 1;

    // Offset of a mesh vertex's angle from a terminal's angle.
    const auto terminal_offset = [&](const Terminal& t, int j) {
        const double raw = mesh.angle(mesh.wrap_j(j)) - t.psi;
        return mesh.wrap ? fold_angle(raw, geom.total_angle()) : raw;
    };

    // ===== Dijkstra =====
    const std::size_t n_total = mesh.nodes() + 2;
    std::vector<double> dist(n_total, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> parent(n_total, n_total);
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;

    dist[src] = 0.0;
    heap.emplace(0.0, src);

    const int halo = 3; // terminal hookup window, in cells

    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        if (u == dst) break;

        const auto relax = [&](std::size_t v, double w) {
            if (dist[u] + w < dist[v]) {
                dist[v] = dist[u] + w;
                parent[v] = u;
                heap.emplace(dist[v], v);
            }
        };

        if (u == src) {
            for (int di = -halo; di <= halo; ++di) {
                const int i = tp.i0 + di;
                if (i < 0 || i >= mesh.n_r) continue;
                for (int dj = -halo; dj <= halo; ++dj) {
                    const int j = tp.j0 + dj;
                    if (!mesh.valid_j(j)) continue;
                    relax(mesh.id(i, j),
                          chord(tp.r, mesh.radius(i), terminal_offset(tp, j)));
                }
            }
            continue;
        }

        const int i = static_cast<int>(u / mesh.n_psi);
        const int j = static_cast<int>(u % mesh.n_psi);

        // Hook into the destination terminal when inside its halo.
        if (std::abs(i - tq.i0) <= halo) {
            int dj = j - tq.j0;
            if (mesh.wrap) {
                if (dj > mesh.n_psi / 2) dj -= mesh.n_psi;
                if (dj < -mesh.n_psi / 2) dj += mesh.n_psi;
            }
            if (std::abs(dj) <= halo)
                relax(dst, chord(mesh.radius(i), tq.r, terminal_offset(tq, j)));
        }

        for (const auto& mv : kMoves) {
            const int ni = i + mv[0];
            if (ni < 0 || ni >= mesh.n_r) continue;
            const int nj = j + mv[1];
            if (!mesh.valid_j(nj)) continue;
            relax(mesh.id(ni, nj),
                  chord(mesh.radius(i), mesh.radius(ni), mv[1] * mesh.dpsi));
        }
    }

    if (!std::isfinite(dist[dst]))
        throw std::runtime_error("oracle_distance: mesh search failed to reach the target");
    stats.raw_length = dist[dst];

    // ===== path extraction with unwrapped angles =====
    std::vector<std::size_t> chain;
    for (std::size_t v = dst; v != n_total; v = parent[v]) chain.push_back(v);
    std::reverse(chain.begin(), chain.end());

    struct Vertex {
        double r;
        double psi; // unwrapped
    };
    std::vector<Vertex> path;
    path.reserve(chain.size());
    path.push_back({tp.r, 0.0});
    int prev_j = -1;
    for (std::size_t k = 1; k < chain.size(); ++k) {
        const std::size_t v = chain[k];
        if (v == dst) {
            // Last hop: from a mesh vertex into q.
            path.push_back({tq.r, path.back().psi - terminal_offset(tq, prev_j)});
            break;
        }
        const int i = static_cast<int>(v / mesh.n_psi);
        const int j = static_cast<int>(v % mesh.n_psi);
        double delta;
        if (chain[k - 1] == src) {
            delta = terminal_offset(tp, j);
        } else {
            int dj = j - prev_j;
            if (mesh.wrap) {
                if (dj > mesh.n_psi / 2) dj -= mesh.n_psi;
                if (dj < -mesh.n_psi / 2) dj += mesh.n_psi;
            }
            delta = dj * mesh.dpsi;
        }
        path.push_back({mesh.radius(i), path.back().psi + delta});
        prev_j = j;
    }
    stats.path_vertices = path.size();

    // ===== chord-shortcut pass =====
    // Optimal straightening of the polyline: a chord may replace any sub-path
    // whose total angular sweep stays strictly below pi.  Such a chord is a
    // genuine curve on the cone (it misses the apex), so the straightened
    // length is still an upper bound on the true distance.
    const double band = 1e-9;
    const std::size_t L = path.size();
    std::vector<double> best(L, std::numeric_limits<double>::infinity());
    best[0] = 0.0;
    for (std::size_t k = 1; k < L; ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            const double sweep = path[k].psi - path[j].psi;
            if (std::fabs(sweep) >= kPi - band) continue;
            const double cand = best[j] + chord(path[j].r, path[k].r, sweep);
            if (cand < best[k]) best[k] = cand;
        }
    }

    stats.length = std::min(stats.raw_length, best[L - 1]);
    return stats;
}

double oracle_distance(const ConePoint& p, const ConePoint& q,
                       const ConeGeometry& geom, double resolution) {
    return oracle_distance_stats(p, q, geom, resolution).length;
}

} // namespace causalgeo
