#include "sawtree/finite_tree.hpp"

namespace sawtree {

FiniteTree FiniteTree::parse(std::string_view parens) {
    FiniteTree t;
    std::vector<std::int32_t> stack;
    for (char c : parens) {
        if (c == ' ' || c == '\n' || c == '\t' || c == '\r') continue;
        if (c == '(') {
            if (stack.empty() && !t.verts.empty())
                throw InvalidInput("tree literal has more than one root");
            Vertex v;
            v.parent = stack.empty() ? -1 : stack.back();
            v.depth = static_cast<std::uint32_t>(stack.size());
            t.verts.push_back(v);
            std::int32_t id = static_cast<std::int32_t>(t.verts.size()) - 1;
            if (v.parent >= 0) t.verts[v.parent].kids.push_back(id);
            stack.push_back(id);
        } else if (c == ')') {
            if (stack.empty()) throw InvalidInput("unbalanced ')' in tree literal");
            stack.pop_back();
        } else {
            throw InvalidInput(std::string("unexpected character '") + c + "' in tree literal");
        }
    }
    if (!stack.empty()) throw InvalidInput("unbalanced '(' in tree literal");
    if (t.verts.empty()) throw InvalidInput("empty tree literal");
    return t;
}

std::string FiniteTree::to_parens() const {
    std::string out;
    // Recursive descent over an explicit stack: emit '(' on entry, ')' on exit.
    struct Frame {
        std::int32_t v;
        std::size_t next = 0;
    };
    std::vector<Frame> stack{{0, 0}};
    out.push_back('(');
    while (!stack.empty()) {
        Frame& f = stack.back();
        const auto& kids = verts[f.v].kids;
        if (f.next < kids.size()) {
            std::int32_t c = kids[f.next++];
            out.push_back('(');
            stack.push_back({c, 0});
        } else {
            out.push_back(')');
            stack.pop_back();
        }
    }
    return out;
}

}  // namespace sawtree
