#pragma once

#include <memory>
#include <string>

#include "sawtree/tree_model.hpp"

namespace sawtree {

// Builds a tree from its textual spec:
//   saw:<domain>[:pruned]   walk tree over plane|halfplane|upperhalfplane|
//                           quadrant|strip:<L>
//   uniform:<b>             b-ary tree (ray / binary are shorthands)
//   prop5:x=<r>             greedy floor profile, rational x >= 1
//   prop5bar:x=<r>          doubled-at-squares variant, rational x > 1
//   prop4:x=<r>,k=<int>     polynomially corrected profile
//   periodic:<parens|file>  periodic closure of a finite tree, inline like
//                           (()(()())) or the name of a file holding one
//   join:{A};{B}            new root with the roots of A and B as children
std::shared_ptr<TreeModel> make_tree(const std::string& spec);

}  // namespace sawtree
