#include "sawtree/saw_tree.hpp"

#include <algorithm>

namespace sawtree {

namespace detail {

void Occupancy::occupy(Point p) {
    cells.insert(p);
    rows[p.y].insert(p.x);
    cols[p.x].insert(p.y);
}

void Occupancy::vacate(Point p) {
    cells.erase(p);
    auto r = rows.find(p.y);
    r->second.erase(p.x);
    if (r->second.empty()) rows.erase(r);
    auto c = cols.find(p.x);
    c->second.erase(p.y);
    if (c->second.empty()) cols.erase(c);
}

Box Occupancy::box() const {
    return Box{cols.begin()->first, cols.rbegin()->first, rows.begin()->first,
               rows.rbegin()->first};
}

bool Occupancy::ray_free(Point p, int dir) const {
    switch (dir) {
        case 0: {  // +x
            auto it = rows.find(p.y);
            return it == rows.end() || it->second.upper_bound(p.x) == it->second.end();
        }
        case 1: {  // +y
            auto it = cols.find(p.x);
            return it == cols.end() || it->second.upper_bound(p.y) == it->second.end();
        }
        case 2: {  // -x
            auto it = rows.find(p.y);
            return it == rows.end() || it->second.lower_bound(p.x) == it->second.begin();
        }
        default: {  // -y
            auto it = cols.find(p.x);
            return it == cols.end() || it->second.lower_bound(p.y) == it->second.begin();
        }
    }
}

namespace {

// Ray directions that stay inside the domain from any in-domain cell the
// tests can reach (walk cells other than the origin, which stays occupied).
const std::vector<int>& domain_ray_dirs(const DomainSpec& domain) {
    static const std::vector<int> all{0, 1, 2, 3};
    static const std::vector<int> no_south{0, 1, 2};
    static const std::vector<int> north_east{0, 1};
    static const std::vector<int> horizontal{0, 2};
    switch (domain.kind) {
        case DomainKind::FullPlane: return all;
        case DomainKind::ClosedHalfPlane: return no_south;
        case DomainKind::UpperHalfPlane: return no_south;
        case DomainKind::Quadrant: return north_east;
        case DomainKind::Strip: return horizontal;
    }
    return all;
}

}  // namespace

bool Occupancy::escapes(const DomainSpec& domain, Point c) {
    occupy(c);
    const auto& dirs = domain_ray_dirs(domain);
    bool ok = false;
    for (int d : dirs) {
        if (ray_free(c, d)) {
            ok = true;
            break;
        }
    }
    if (!ok) {
        // Flood the free region around c. Success as soon as a reached cell
        // has a clear in-domain ray or a free neighbor outside the enlarged
        // bounding box: both certify an infinite free component.
        Box b = box();
        b.expand(2);
        std::unordered_set<Point, PointHash> seen{c};
        std::vector<Point> stack{c};
        while (!ok && !stack.empty()) {
            const Point u = stack.back();
            stack.pop_back();
            for (Point nb : neighbors(u)) {
                if (!domain.contains(nb) || cells.count(nb) || seen.count(nb)) continue;
                if (!b.contains(nb)) {
                    ok = true;
                    break;
                }
                bool clear = false;
                for (int d : dirs) {
                    if (ray_free(nb, d)) {
                        clear = true;
                        break;
                    }
                }
                if (clear) {
                    ok = true;
                    break;
                }
                seen.insert(nb);
                stack.push_back(nb);
            }
        }
    }
    vacate(c);
    return ok;
}

}  // namespace detail

bool has_infinite_extension(const DomainSpec& domain, const FiniteWalk& w) {
    detail::Occupancy occ;
    for (Point p : w.points) occ.occupy(p);
    for (Point nb : neighbors(w.head())) {
        if (!domain.contains(nb) || occ.contains(nb)) continue;
        if (occ.escapes(domain, nb)) return true;
    }
    return false;
}

SawTree::SawTree(DomainSpec domain, bool pruned) : domain_(domain), pruned_(pruned) {
    heads_.push_back(Point{0, 0});
    occ_.occupy(Point{0, 0});
}

FiniteWalk SawTree::walk_of(NodeId v) const {
    std::vector<Point> pts;
    for (NodeId u = v;; u = parent(u)) {
        pts.push_back(heads_[u]);
        if (u == kRootNode) break;
    }
    std::reverse(pts.begin(), pts.end());
    FiniteWalk w;
    w.points = std::move(pts);
    return w;
}

void SawTree::context_to(NodeId v) {
    if (v == cur_) return;
    NodeId a = cur_, b = v;
    std::vector<NodeId> down;
    while (depth(a) > depth(b)) {
        occ_.vacate(heads_[a]);
        a = parent(a);
    }
    while (depth(b) > depth(a)) {
        down.push_back(b);
        b = parent(b);
    }
    while (a != b) {
        occ_.vacate(heads_[a]);
        a = parent(a);
        down.push_back(b);
        b = parent(b);
    }
    for (auto it = down.rbegin(); it != down.rend(); ++it) occ_.occupy(heads_[*it]);
    cur_ = v;
}

std::uint32_t SawTree::expand(NodeId v) {
    context_to(v);
    const Point h = heads_[v];
    std::uint32_t cnt = 0;
    for (Point s : kSteps) {
        const Point c = h + s;
        if (!domain_.contains(c) || occ_.contains(c)) continue;
        if (pruned_ && !occ_.escapes(domain_, c)) continue;
        add_node(v);
        heads_.push_back(c);
        ++cnt;
    }
    return cnt;
}

}  // namespace sawtree
