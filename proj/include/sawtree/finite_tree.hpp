#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sawtree/errors.hpp"

namespace sawtree {

// A finite rooted ordered tree in nested-parentheses form: each vertex is a
// "(...)" group, children are the nested groups. "(()(()()))" is a root whose
// first child is a leaf and whose second child has two leaf children.
struct FiniteTree {
    struct Vertex {
        std::int32_t parent = -1;
        std::uint32_t depth = 0;
        std::vector<std::int32_t> kids;
    };

    std::vector<Vertex> verts;  // verts[0] is the root

    static FiniteTree parse(std::string_view parens);
    std::string to_parens() const;

    bool is_leaf(std::int32_t i) const { return verts[i].kids.empty(); }

    std::uint32_t max_depth() const {
        std::uint32_t d = 0;
        for (const auto& v : verts) d = std::max(d, v.depth);
        return d;
    }

    std::vector<std::uint32_t> leaf_depths() const {
        std::vector<std::uint32_t> out;
        for (const auto& v : verts)
            if (v.kids.empty()) out.push_back(v.depth);
        return out;
    }
};

}  // namespace sawtree
