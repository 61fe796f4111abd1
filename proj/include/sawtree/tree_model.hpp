#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sawtree/errors.hpp"
#include "sawtree/lattice.hpp"
#include "sawtree/numeric.hpp"

namespace sawtree {

// Node handles are arena indices local to one tree instance; the root is 0.
using NodeId = std::uint32_t;
inline constexpr NodeId kRootNode = 0;

// Node classes: nodes with the same class have isomorphic subtrees. They let
// level counting and network reduction memoize by (class, remaining depth)
// instead of walking exponentially many nodes.
using ClassId = std::uint32_t;

struct ClassChild {
    ClassId cls;
    std::int64_t count;
};

class LevelProfile;

// A rooted, lazily generated, locally finite tree. Children are materialized
// on first access in a deterministic order and then cached; handles stay
// valid for the lifetime of the tree. Instances are single-threaded; parallel
// consumers should each own an instance.
class TreeModel {
public:
    virtual ~TreeModel() = default;

    // Children of v occupy consecutive ids [first, first+count). Expanding may
    // throw BudgetExceeded once the arena outgrows node_budget().
    virtual std::pair<NodeId, std::uint32_t> children(NodeId v) = 0;
    virtual NodeId parent(NodeId v) const = 0;
    virtual std::uint32_t depth(NodeId v) const = 0;
    virtual std::uint64_t node_count() const = 0;

    // Number of vertices at depth n (exact).
    virtual BigInt level_count(std::uint32_t n) = 0;

    // Per-level child counts when the tree is spherically symmetric.
    virtual const LevelProfile* profile() const { return nullptr; }

    // True only when the tree certifiably has no finite branches.
    virtual bool leafless() const = 0;

    virtual std::optional<ClassId> node_class(NodeId) { return std::nullopt; }
    virtual std::vector<ClassChild> class_children(ClassId) { return {}; }

    // Lattice embedding (walk trees): endpoint of the walk the node stands for.
    virtual std::optional<Point> head_of(NodeId) const { return std::nullopt; }

    std::uint64_t node_budget() const { return node_budget_; }
    void set_node_budget(std::uint64_t b) { node_budget_ = b; }

protected:
    std::uint64_t node_budget_ = 8'000'000;
};

// Shared arena machinery: append-only node store; children of a node are the
// consecutive ids created by its expansion.
class ArenaTree : public TreeModel {
public:
    std::pair<NodeId, std::uint32_t> children(NodeId v) final {
        if (nodes_[v].child_count < 0) {
            const NodeId first = static_cast<NodeId>(nodes_.size());
            const std::uint32_t cnt = expand(v);
            nodes_[v].first_child = first;
            nodes_[v].child_count = static_cast<std::int64_t>(cnt);
        }
        return {nodes_[v].first_child, static_cast<std::uint32_t>(nodes_[v].child_count)};
    }

    NodeId parent(NodeId v) const final { return nodes_[v].parent; }
    std::uint32_t depth(NodeId v) const final { return nodes_[v].depth; }
    std::uint64_t node_count() const final { return nodes_.size(); }

    // Default level counting: class-memoized recursion when the root carries a
    // class, otherwise a budgeted DFS over the arena.
    BigInt level_count(std::uint32_t n) override;

protected:
    struct Node {
        NodeId parent = kRootNode;
        std::uint32_t depth = 0;
        NodeId first_child = 0;
        std::int64_t child_count = -1;  // -1: not yet expanded
    };

    ArenaTree() { nodes_.push_back(Node{}); }

    // Create the children of v (via add_node) and return how many.
    virtual std::uint32_t expand(NodeId v) = 0;

    NodeId add_node(NodeId parent_id) {
        if (nodes_.size() >= node_budget_)
            throw BudgetExceeded("tree node budget exceeded while expanding depth " +
                                     std::to_string(nodes_[parent_id].depth),
                                 nodes_[parent_id].depth);
        nodes_.push_back(Node{parent_id, nodes_[parent_id].depth + 1, 0, -1});
        return static_cast<NodeId>(nodes_.size() - 1);
    }

    std::vector<Node> nodes_;

private:
    BigInt class_level_count(ClassId root_class, std::uint32_t n);
    BigInt dfs_level_count(std::uint32_t n);

    std::unordered_map<std::uint64_t, BigInt> class_count_memo_;
};

}  // namespace sawtree
