#pragma once

#include <map>
#include <set>
#include <unordered_set>
#include <vector>

#include "sawtree/tree_model.hpp"
#include "sawtree/walk.hpp"

namespace sawtree {

namespace detail {

// Occupied-cell index for one self-avoiding walk: hash set for membership,
// ordered row/column sets for ray tests and an exact bounding box.
struct Occupancy {
    std::unordered_set<Point, PointHash> cells;
    std::map<std::int32_t, std::set<std::int32_t>> rows;  // y -> occupied xs
    std::map<std::int32_t, std::set<std::int32_t>> cols;  // x -> occupied ys

    void occupy(Point p);
    void vacate(Point p);
    bool contains(Point p) const { return cells.count(p) != 0; }
    Box box() const;

    // No occupied cell strictly beyond p in direction kSteps[dir].
    bool ray_free(Point p, int dir) const;

    // True when the walk currently indexed here, extended by the free cell c,
    // still has an infinite self-avoiding in-domain continuation. c is
    // occupied during the test and released before returning.
    bool escapes(const DomainSpec& domain, Point c);
};

}  // namespace detail

// True when some infinite self-avoiding walk in the domain extends w.
bool has_infinite_extension(const DomainSpec& domain, const FiniteWalk& w);

// The tree of finite self-avoiding walks from the origin in a domain: one
// node per walk, children are the one-step extensions in E,N,W,S order.
// When pruned, only walks with an infinite extension are kept, which removes
// every leaf. Expansion is lazy; a cursor walk's cells are kept indexed and
// moved between nodes along tree edges.
class SawTree final : public ArenaTree {
public:
    SawTree(DomainSpec domain, bool pruned);

    const DomainSpec& domain() const { return domain_; }
    bool pruned() const { return pruned_; }
    bool leafless() const override { return pruned_; }

    std::optional<Point> head_of(NodeId v) const override { return heads_[v]; }
    FiniteWalk walk_of(NodeId v) const;

protected:
    std::uint32_t expand(NodeId v) override;

private:
    void context_to(NodeId v);

    DomainSpec domain_;
    bool pruned_;
    std::vector<Point> heads_;
    NodeId cur_ = kRootNode;  // node whose walk the occupancy currently holds
    detail::Occupancy occ_;
};

}  // namespace sawtree
