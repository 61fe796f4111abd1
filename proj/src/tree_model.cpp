#include "sawtree/tree_model.hpp"

namespace sawtree {

BigInt ArenaTree::level_count(std::uint32_t n) {
    if (n == 0) return BigInt(1);
    if (auto rc = node_class(kRootNode)) return class_level_count(*rc, n);
    return dfs_level_count(n);
}

BigInt ArenaTree::class_level_count(ClassId root_class, std::uint32_t n) {
    // cnt(c, m): vertices at relative depth m below a class-c node.
    // Iterative over m so deep levels don't recurse.
    std::vector<std::unordered_map<ClassId, BigInt>> by_depth(n + 1);
    by_depth[0][root_class] = BigInt(1);
    // Discover reachable classes level by level; memoized per (class, rem).
    for (std::uint32_t m = 0; m < n; ++m) {
        for (const auto& [cls, mult] : by_depth[m]) {
            for (const ClassChild& cc : class_children(cls)) {
                by_depth[m + 1][cc.cls] += mult * cc.count;
            }
        }
    }
    BigInt total(0);
    for (const auto& [cls, mult] : by_depth[n]) total += mult;
    return total;
}

BigInt ArenaTree::dfs_level_count(std::uint32_t n) {
    // Iterative DFS to depth n; counts only depth-n vertices.
    BigInt total(0);
    std::vector<std::pair<NodeId, std::uint32_t>> stack;  // (next child id, remaining)
    auto push_children = [&](NodeId v) {
        auto [first, cnt] = children(v);
        if (cnt > 0) stack.emplace_back(first, cnt);
    };
    if (n == 0) return BigInt(1);
    push_children(kRootNode);
    while (!stack.empty()) {
        auto& [next, remaining] = stack.back();
        if (remaining == 0) {
            stack.pop_back();
            continue;
        }
        NodeId v = next;
        ++next;
        --remaining;
        if (stack.size() == n) {
            ++total;  // depth == n; do not descend
        } else {
            push_children(v);
        }
    }
    return total;
}

}  // namespace sawtree
