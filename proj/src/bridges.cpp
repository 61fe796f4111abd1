#include "sawtree/bridges.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "sawtree/errors.hpp"

namespace sawtree {

namespace {

struct BudgetStop {};

// Dense occupancy over a rectangle; all enumerations stay within n steps of
// the origin, so the rectangle covers every reachable cell.
class Grid {
public:
    Grid(std::int32_t x0, std::int32_t x1, std::int32_t y0, std::int32_t y1)
        : xmin_(x0), xmax_(x1), ymin_(y0), ymax_(y1),
          stride_(static_cast<std::size_t>(x1 - x0 + 1)),
          cells_(stride_ * static_cast<std::size_t>(y1 - y0 + 1), 0) {}

    bool in(Point p) const {
        return p.x >= xmin_ && p.x <= xmax_ && p.y >= ymin_ && p.y <= ymax_;
    }
    bool occupied(Point p) const { return cells_[idx(p)] != 0; }
    void set(Point p, bool v) { cells_[idx(p)] = v ? 1 : 0; }

private:
    std::size_t idx(Point p) const {
        return static_cast<std::size_t>(p.y - ymin_) * stride_ +
               static_cast<std::size_t>(p.x - xmin_);
    }
    std::int32_t xmin_, xmax_, ymin_, ymax_;
    std::size_t stride_;
    std::vector<std::uint8_t> cells_;
};

// Depth-first enumeration of SAWs of exactly `target` steps. `member` gates
// every new cell; `leaf(path, maxx)` fires at full length with the running
// first-coordinate maximum. Throws BudgetStop when visits exceed the budget.
template <class Member, class Leaf>
void saw_dfs(std::vector<Point>& path, Grid& g, std::int32_t maxx, std::uint32_t target,
             const Member& member, const Leaf& leaf, std::uint64_t& visits,
             std::uint64_t budget) {
    if (path.size() - 1 == target) {
        leaf(path, maxx);
        return;
    }
    const Point head = path.back();
    for (const Point& s : kSteps) {
        const Point q = head + s;
        if (!g.in(q) || g.occupied(q) || !member(q)) continue;
        if (++visits > budget) throw BudgetStop{};
        g.set(q, true);
        path.push_back(q);
        saw_dfs(path, g, std::max(maxx, q.x), target, member, leaf, visits, budget);
        path.pop_back();
        g.set(q, false);
    }
}

// Iterative deepening: counts at level L are only trusted once the whole
// level enumerates within the budget, so a budget stop leaves a clean prefix.
template <class Member, class Leaf>
void deepen(CountTable& table, std::uint32_t n_max, std::uint64_t budget, Grid& grid,
            const Member& member, const Leaf& leaf) {
    std::uint64_t visits = 0;
    std::vector<Point> path{Point{0, 0}};
    grid.set(Point{0, 0}, true);
    for (std::uint32_t level = 1; level <= n_max; ++level) {
        try {
            saw_dfs(path, grid, 0, level, member, leaf, visits, budget);
        } catch (const BudgetStop&) {
            table.complete = false;
            table.reached = level - 1;
            table.counts.resize(level);
            return;
        }
        table.reached = level;
    }
}

bool bridge_points(const std::vector<Point>& pts) {
    const std::size_t n = pts.size() - 1;
    const std::int32_t xn = pts[n].x;
    for (std::size_t i = 1; i <= n; ++i)
        if (pts[i].x <= 0 || pts[i].x > xn) return false;
    return true;
}

// Valid split indices of a bridge: x_i dominates the prefix and sits strictly
// below the whole suffix. `sufmin` is scratch, reused across calls.
void split_indices(const std::vector<Point>& pts, std::vector<std::int32_t>& sufmin,
                   std::vector<std::size_t>& out) {
    out.clear();
    const std::size_t n = pts.size() - 1;
    if (n < 2) return;
    sufmin.resize(n + 2);
    sufmin[n + 1] = std::numeric_limits<std::int32_t>::max();
    for (std::size_t i = n + 1; i-- > 1;) sufmin[i] = std::min(pts[i].x, sufmin[i + 1]);
    std::int32_t prefmax = std::numeric_limits<std::int32_t>::min();
    for (std::size_t i = 1; i <= n - 1; ++i) {
        prefmax = std::max(prefmax, pts[i].x);
        if (pts[i].x == prefmax && pts[i].x < sufmin[i + 1]) out.push_back(i);
    }
}

bool irreducible_points(const std::vector<Point>& pts, std::vector<std::int32_t>& sufmin,
                        std::vector<std::size_t>& scratch) {
    split_indices(pts, sufmin, scratch);
    return scratch.empty();
}

}  // namespace

CountTable count_walks(const DomainSpec& domain, std::uint32_t n_max, std::uint64_t budget) {
    CountTable table;
    table.kind = "saw";
    table.domain = domain.name();
    table.counts.assign(n_max + 1, BigInt(0));
    table.counts[0] = 1;
    const auto n = static_cast<std::int32_t>(n_max);
    Grid grid(-n, n, -n, n);
    deepen(table, n_max, budget, grid, [&](Point q) { return domain.contains(q); },
           [&](const std::vector<Point>& path, std::int32_t) {
               ++table.counts[path.size() - 1];
           });
    return table;
}

CountTable count_bridges(BridgeDomain bd, std::uint32_t n_max, std::int32_t strip_height,
                         std::uint64_t budget) {
    CountTable table;
    table.kind = "bridge";
    const auto n = static_cast<std::int32_t>(n_max);
    std::function<bool(Point)> member;
    switch (bd) {
        case BridgeDomain::Plane:
            table.domain = "plane";
            member = [](Point q) { return q.x >= 1; };
            break;
        case BridgeDomain::Quadrant:
            table.domain = "quadrant";
            member = [](Point q) { return q.x >= 1 && q.y >= 0; };
            break;
        case BridgeDomain::Strip:
            if (strip_height < 1) throw InvalidInput("strip height must be >= 1");
            table.domain = "strip:" + std::to_string(strip_height);
            member = [strip_height](Point q) {
                return q.x >= 1 && q.y >= 0 && q.y <= strip_height;
            };
            break;
    }
    table.counts.assign(n_max + 1, BigInt(0));
    table.counts[0] = 1;  // the empty bridge
    Grid grid(0, n, -n, n);
    deepen(table, n_max, budget, grid, [&](Point q) { return member(q); },
           [&](const std::vector<Point>& path, std::int32_t maxx) {
               if (path.back().x == maxx) ++table.counts[path.size() - 1];
           });
    return table;
}

CountTable count_irreducible_bridges(std::uint32_t n_max, std::uint64_t budget) {
    CountTable table;
    table.kind = "irreducible";
    table.domain = "plane";
    table.counts.assign(n_max + 1, BigInt(0));
    const auto n = static_cast<std::int32_t>(n_max);
    Grid grid(0, n, -n, n);
    std::vector<std::int32_t> sufmin;
    std::vector<std::size_t> scratch;
    deepen(table, n_max, budget, grid, [](Point q) { return q.x >= 1; },
           [&](const std::vector<Point>& path, std::int32_t maxx) {
               if (path.back().x != maxx) return;
               if (irreducible_points(path, sufmin, scratch))
                   ++table.counts[path.size() - 1];
           });
    return table;
}

ThroughCounts count_irreducible_through(std::uint32_t n_max, std::uint64_t budget) {
    ThroughCounts out;
    for (CountTable* t : {&out.straight, &out.up, &out.down}) {
        t->kind = "irreducible";
        t->counts.assign(n_max + 1, BigInt(0));
    }
    out.straight.domain = "through-straight";
    out.up.domain = "through-up";
    out.down.domain = "through-down";
    const auto n = static_cast<std::int32_t>(n_max);
    Grid grid(0, n, -n, n);
    std::vector<std::int32_t> sufmin;
    std::vector<std::size_t> scratch;
    CountTable driver;  // carries the shared complete/reached bookkeeping
    driver.counts.assign(n_max + 1, BigInt(0));
    deepen(driver, n_max, budget, grid, [](Point q) { return q.x >= 1; },
           [&](const std::vector<Point>& path, std::int32_t maxx) {
               if (path.back().x != maxx) return;
               if (!irreducible_points(path, sufmin, scratch)) return;
               const std::size_t len = path.size() - 1;
               CountTable* bucket = &out.straight;
               if (len >= 2) {
                   if (path[2] == Point{1, 1}) bucket = &out.up;
                   else if (path[2] == Point{1, -1}) bucket = &out.down;
               }
               ++bucket->counts[len];
           });
    for (CountTable* t : {&out.straight, &out.up, &out.down}) {
        t->complete = driver.complete;
        t->reached = driver.reached;
        t->counts.resize(driver.reached + 1);
    }
    return out;
}

bool is_bridge(const FiniteWalk& w) { return bridge_points(w.points); }

bool is_irreducible_bridge(const FiniteWalk& w) {
    if (w.length() == 0 || !is_bridge(w)) return false;
    std::vector<std::int32_t> sufmin;
    std::vector<std::size_t> scratch;
    return irreducible_points(w.points, sufmin, scratch);
}

std::vector<FiniteWalk> decompose_bridge(const FiniteWalk& w) {
    if (!is_bridge(w)) throw InvalidInput("walk is not a bridge");
    std::vector<FiniteWalk> pieces;
    if (w.length() == 0) return pieces;
    std::vector<std::int32_t> sufmin;
    std::vector<std::size_t> splits;
    split_indices(w.points, sufmin, splits);
    splits.push_back(w.points.size() - 1);
    std::size_t start = 0;
    for (std::size_t end : splits) {
        FiniteWalk piece;
        piece.points.clear();
        const Point base = w.points[start];
        for (std::size_t i = start; i <= end; ++i) piece.points.push_back(w.points[i] - base);
        pieces.push_back(std::move(piece));
        start = end;
    }
    return pieces;
}

FiniteWalk concat_bridges(const FiniteWalk& a, const FiniteWalk& b) {
    if (!is_bridge(a) || !is_bridge(b)) throw InvalidInput("both pieces must be bridges");
    return concat_walks(a, b);
}

MuBracket mu_bracket(const CountTable& walks, const CountTable& bridges, std::uint32_t n) {
    if (n < 1) throw InvalidInput("need n >= 1");
    if (walks.reached < n || bridges.reached < n)
        throw InvalidInput("count tables do not reach the requested n");
    MuBracket out;
    out.n = n;
    out.lo = 0.0;
    out.hi = std::numeric_limits<double>::infinity();
    for (std::uint32_t m = 1; m <= n; ++m) {
        if (bridges.counts[m] > 0)
            out.lo = std::max(out.lo, std::exp(log_big(bridges.counts[m]) / m));
        out.hi = std::min(out.hi, std::exp(log_big(walks.counts[m]) / m));
    }
    return out;
}

MuBracket mu_bracket(std::uint32_t n, std::uint64_t budget) {
    CountTable walks = count_walks(DomainSpec::plane(), n, budget);
    CountTable bridges = count_bridges(BridgeDomain::Plane, n, 0, budget);
    const std::uint32_t usable = std::min({n, walks.reached, bridges.reached});
    if (usable < 1) throw InvalidInput("budget too small to bracket the connective constant");
    return mu_bracket(walks, bridges, usable);
}

double kesten_partial_sum(const CountTable& irreducible, double x, std::uint32_t N) {
    if (irreducible.reached < N) throw InvalidInput("table does not reach the requested N");
    double sum = 0.0, pw = 1.0;
    for (std::uint32_t m = 1; m <= N; ++m) {
        pw *= x;
        sum += to_double(irreducible.counts[m]) * pw;
    }
    return sum;
}

double critical_lambda_m(const CountTable& irreducible, std::uint32_t m) {
    if (m < 1) throw InvalidInput("need m >= 1");
    if (irreducible.reached < m) throw InvalidInput("table does not reach the requested m");
    BigInt total = 0;
    for (std::uint32_t i = 1; i <= m; ++i) total += irreducible.counts[i];
    if (total < 1) throw InvalidInput("no irreducible bridges up to the requested m");
    if (total == 1) return 1.0;  // the partial sum is exactly x, so the root is 1
    double lo = 1e-9, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (kesten_partial_sum(irreducible, mid, m) < 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::array<double, 3> phi_critical_m(const ThroughCounts& through, std::uint32_t m) {
    CountTable total;
    total.kind = "irreducible";
    total.domain = "plane";
    total.reached = std::min({through.straight.reached, through.up.reached,
                              through.down.reached});
    if (total.reached < m) throw InvalidInput("through tables do not reach the requested m");
    total.counts.assign(total.reached + 1, BigInt(0));
    for (std::uint32_t i = 0; i <= total.reached; ++i)
        total.counts[i] =
            through.straight.counts[i] + through.up.counts[i] + through.down.counts[i];
    const double lambda = critical_lambda_m(total, m);
    std::array<double, 3> phi{0.0, 0.0, 0.0};
    const CountTable* parts[3] = {&through.straight, &through.up, &through.down};
    for (int i = 0; i < 3; ++i) {
        double pw = 1.0;
        for (std::uint32_t n = 1; n <= m; ++n) {
            pw *= lambda;
            phi[static_cast<std::size_t>(i)] += to_double(parts[i]->counts[n]) * pw;
        }
    }
    return phi;
}

KestenSampler::KestenSampler(std::uint32_t m_max, std::uint64_t budget) : m_max_(m_max) {
    if (m_max < 1) throw InvalidInput("need m_max >= 1");
    if (m_max > kMaxStorableLength)
        throw InvalidInput("block storage is capped at length " +
                           std::to_string(kMaxStorableLength));
    p_.kind = "irreducible";
    p_.domain = "plane";
    p_.counts.assign(m_max + 1, BigInt(0));
    blocks_.assign(m_max + 1, {});
    const auto n = static_cast<std::int32_t>(m_max);
    Grid grid(0, n, -n, n);
    std::vector<std::int32_t> sufmin;
    std::vector<std::size_t> scratch;
    deepen(p_, m_max, budget, grid, [](Point q) { return q.x >= 1; },
           [&](const std::vector<Point>& path, std::int32_t maxx) {
               if (path.back().x != maxx) return;
               if (!irreducible_points(path, sufmin, scratch)) return;
               const std::size_t len = path.size() - 1;
               ++p_.counts[len];
               std::uint32_t code = 0;
               for (std::size_t i = 1; i <= len; ++i) {
                   const Point d = path[i] - path[i - 1];
                   for (std::uint32_t dir = 0; dir < kSteps.size(); ++dir)
                       if (kSteps[dir] == d) code |= dir << (2 * (i - 1));
               }
               blocks_[len].push_back(code);
           });
    if (!p_.complete)
        throw BudgetExceeded("irreducible block enumeration ran out of budget at length " +
                                 std::to_string(p_.reached + 1),
                             p_.reached);
}

double KestenSampler::normalizer(double beta) const {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidInput("beta must be positive");
    double z = 0.0, pw = 1.0;
    for (std::uint32_t m = 1; m <= m_max_; ++m) {
        pw *= beta;
        z += to_double(p_.counts[m]) * pw;
    }
    return z;
}

KestenSampler::Draw KestenSampler::sample(double beta, std::uint32_t blocks, Rng& rng) const {
    const double z = normalizer(beta);
    Draw draw;
    for (std::uint32_t b = 0; b < blocks; ++b) {
        double u = rng.uniform() * z;
        std::uint32_t len = m_max_;
        double pw = 1.0;
        for (std::uint32_t m = 1; m <= m_max_; ++m) {
            pw *= beta;
            u -= to_double(p_.counts[m]) * pw;
            if (u <= 0.0) {
                len = m;
                break;
            }
        }
        const auto& pool = blocks_[len];
        const std::uint32_t code = pool[static_cast<std::size_t>(
            rng.uniform_int(static_cast<std::uint32_t>(pool.size())))];
        FiniteWalk piece;
        for (std::uint32_t i = 0; i < len; ++i)
            piece.points.push_back(piece.points.back() + kSteps[(code >> (2 * i)) & 3u]);
        draw.walk = concat_walks(draw.walk, piece);
        draw.block_lengths.push_back(len);
    }
    return draw;
}

}  // namespace sawtree
