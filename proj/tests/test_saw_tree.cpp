#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "oracles.hpp"
#include "sawtree/saw_tree.hpp"

using namespace sawtree;
using testutil::dfs_levels;

namespace {

// All walks at the given depth, read out of the tree as step strings.
std::set<std::string> tree_level_walks(SawTree& t, std::uint32_t depth) {
    std::set<std::string> out;
    std::vector<NodeId> stack{kRootNode};
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        if (t.depth(v) == depth) {
            out.insert(t.walk_of(v).to_steps());
            continue;
        }
        const auto [first, count] = t.children(v);
        for (std::uint32_t i = 0; i < count; ++i)
            stack.push_back(static_cast<NodeId>(first + i));
    }
    return out;
}

std::set<std::string> oracle_walks(const DomainSpec& d, std::uint32_t n) {
    std::set<std::string> out;
    for (const FiniteWalk& w : oracles::naive_enumerate_saws(d, n)) out.insert(w.to_steps());
    return out;
}

}  // namespace

TEST_CASE("unpruned level counts equal the naive enumeration") {
    for (const char* name : {"plane", "halfplane", "upperhalfplane", "quadrant", "strip:2"}) {
        const DomainSpec d = DomainSpec::parse(name);
        SawTree t(d, false);
        for (std::uint32_t n = 0; n <= 7; ++n)
            CHECK(t.level_count(n) == oracles::naive_saw_count(d, n));
    }
}

TEST_CASE("unpruned level walks are exactly the naive SAW sets") {
    for (const char* name : {"halfplane", "quadrant", "strip:1"}) {
        const DomainSpec d = DomainSpec::parse(name);
        SawTree t(d, false);
        for (std::uint32_t n : {3u, 5u}) CHECK(tree_level_walks(t, n) == oracle_walks(d, n));
    }
}

TEST_CASE("children are the one-step extensions in E,N,W,S order") {
    SawTree t(DomainSpec::plane(), false);
    const auto [first, count] = t.children(kRootNode);
    REQUIRE(count == 4);
    CHECK(t.walk_of(first + 0).to_steps() == "E");
    CHECK(t.walk_of(first + 1).to_steps() == "N");
    CHECK(t.walk_of(first + 2).to_steps() == "W");
    CHECK(t.walk_of(first + 3).to_steps() == "S");

    const auto [efirst, ecount] = t.children(first);
    REQUIRE(ecount == 3);
    CHECK(t.walk_of(efirst + 0).to_steps() == "EE");
    CHECK(t.walk_of(efirst + 1).to_steps() == "EN");
    CHECK(t.walk_of(efirst + 2).to_steps() == "ES");
}

TEST_CASE("head_of and depth match the stored walk") {
    SawTree t(DomainSpec::half_plane(), true);
    const auto levels = dfs_levels(t, 5);
    CHECK(levels[0] == 1);
    std::vector<NodeId> stack{kRootNode};
    while (!stack.empty()) {
        const NodeId v = stack.back();
        stack.pop_back();
        const FiniteWalk w = t.walk_of(v);
        REQUIRE(t.head_of(v).has_value());
        CHECK(*t.head_of(v) == w.head());
        CHECK(t.depth(v) == w.length());
        CHECK(w.is_valid_saw(t.domain()));
        if (t.depth(v) == 4) continue;
        const auto [first, count] = t.children(v);
        for (std::uint32_t i = 0; i < count; ++i)
            stack.push_back(static_cast<NodeId>(first + i));
    }
}

TEST_CASE("infinite extension detection on hand-built walks") {
    const DomainSpec half = DomainSpec::half_plane();
    // N E E S W ends at (1,0) with E,N,W occupied and S outside: trapped.
    CHECK_FALSE(has_infinite_extension(half, FiniteWalk::from_steps("NEESW", half)));
    CHECK(has_infinite_extension(half, FiniteWalk::from_steps("NEES", half)));
    CHECK(has_infinite_extension(half, FiniteWalk{}));

    const DomainSpec quad = DomainSpec::quadrant();
    // E N N W S walls the head into the corner pocket at (0,1).
    CHECK_FALSE(has_infinite_extension(quad, FiniteWalk::from_steps("ENNWS", quad)));
    CHECK(has_infinite_extension(quad, FiniteWalk::from_steps("ENNW", quad)));
}

TEST_CASE("pruned trees keep exactly the walks with long extensions") {
    // Extending by 30 more steps is a faithful stand-in for extending forever
    // at these sizes: any pocket a 6-step walk can trap the head in holds
    // far fewer than 30 free cells.
    for (const char* name : {"halfplane", "quadrant", "strip:1"}) {
        const DomainSpec d = DomainSpec::parse(name);
        SawTree pruned(d, true);
        for (std::uint32_t n : {4u, 6u}) {
            std::set<std::string> expected;
            for (const FiniteWalk& w : oracles::naive_enumerate_saws(d, n))
                if (oracles::naive_can_extend_by(d, w, 30)) expected.insert(w.to_steps());
            CHECK(tree_level_walks(pruned, n) == expected);
        }
    }
}

TEST_CASE("pruning removes walks, never adds them") {
    const DomainSpec d = DomainSpec::strip(1);
    SawTree full(d, false);
    SawTree pruned(d, true);
    for (std::uint32_t n = 0; n <= 8; ++n) {
        CHECK(pruned.level_count(n) <= full.level_count(n));
        CHECK(pruned.level_count(n) > 0);
    }
}

TEST_CASE("upper half plane root is forced north") {
    SawTree t(DomainSpec::upper_half_plane(), true);
    const auto [first, count] = t.children(kRootNode);
    REQUIRE(count == 1);
    CHECK(t.walk_of(first).to_steps() == "N");
    CHECK(t.leafless());
}

TEST_CASE("node budget stops expansion with the reached depth") {
    SawTree t(DomainSpec::plane(), false);
    t.set_node_budget(50);
    CHECK_THROWS_AS(dfs_levels(t, 6), BudgetExceeded);
    try {
        SawTree t2(DomainSpec::plane(), false);
        t2.set_node_budget(50);
        dfs_levels(t2, 6);
    } catch (const BudgetExceeded& e) {
        CHECK(e.partial() >= 0);
        CHECK(std::string(e.what()).find("budget") != std::string::npos);
    }
}

TEST_CASE("level counting by classes is unavailable but DFS works") {
    // SAW trees carry no isomorphism classes; level_count must still agree
    // with a manual arena walk.
    SawTree t(DomainSpec::quadrant(), false);
    CHECK_FALSE(t.node_class(kRootNode).has_value());
    const auto levels = dfs_levels(t, 6);
    for (std::uint32_t n = 0; n <= 6; ++n) CHECK(t.level_count(n) == levels[n]);
}
