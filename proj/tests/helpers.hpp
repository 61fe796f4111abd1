#pragma once

// Small shared test utilities. dfs_levels deliberately counts through the
// public children() interface so it cross-checks whatever closed-form or
// memoized path level_count takes.

#include <cstdint>
#include <utility>
#include <vector>

#include "sawtree/numeric.hpp"
#include "sawtree/tree_model.hpp"

namespace sawtree::testutil {

inline std::vector<BigInt> dfs_levels(TreeModel& t, std::uint32_t depth_max) {
    std::vector<BigInt> out(depth_max + 1, BigInt(0));
    std::vector<std::pair<NodeId, std::uint32_t>> stack{{kRootNode, 0}};
    while (!stack.empty()) {
        const auto [v, d] = stack.back();
        stack.pop_back();
        out[d] += 1;
        if (d == depth_max) continue;
        const auto [first, count] = t.children(v);
        for (std::uint32_t i = 0; i < count; ++i)
            stack.push_back({static_cast<NodeId>(first + i), d + 1});
    }
    return out;
}

}  // namespace sawtree::testutil
