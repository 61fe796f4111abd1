#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sawtree/conductance.hpp"
#include "sawtree/lattice.hpp"
#include "sawtree/tree_model.hpp"

namespace sawtree {

// One simulated trajectory of the biased walk. Entry 0 is the starting root;
// entry i is the state after step i. Heads are recorded when the tree embeds
// in the lattice (walk trees), node ids only on request.
struct WalkerTrace {
    std::vector<std::uint32_t> depths;
    std::vector<Point> heads;
    std::vector<NodeId> nodes;
    bool has_heads = false;
    std::uint32_t max_depth = 0;
    std::uint64_t max_depth_step = 0;  // first step index attaining max_depth
    NodeId deepest_node = 0;
    bool stuck = false;  // infinite bias walked into a leaf
    std::uint64_t seed = 0;
};

// Single-step law: probabilities over [father?, child_1..child_k]. The root
// has no father entry; lambda may be infinity (all mass on the children,
// none anywhere at a leaf).
std::vector<double> transition_distribution(std::uint32_t k_children, bool is_root,
                                            double lambda);

// Runs max_steps steps (fewer only if an infinite-bias walk gets stuck).
// Randomness comes from substream (seed, "walk-sim").
WalkerTrace simulate(TreeModel& t, double lambda, std::uint64_t max_steps, std::uint64_t seed,
                     bool store_nodes = false);

// Number of post-start visits to the boundary line y = 0. Requires heads.
std::uint64_t line_visit_count(const WalkerTrace& trace);

enum class CommitStatus { Committed, Timeout };

struct LimitWalkPrefix {
    CommitStatus status = CommitStatus::Committed;
    std::vector<NodeId> nodes;  // depths 1..level along the committed ray
    std::uint32_t level = 0;
    std::uint32_t margin = 0;
    std::uint64_t steps_used = 0;
    std::vector<double> widths;  // exact sampler: certified interval widths
    std::string method;
};

// Simulates the walk and reads off the first k limit-walk vertices by the
// commit heuristic: once the walk first reaches depth k + margin, its
// depth-(<=k) ancestors have been visited for the last time with high
// probability and are committed. Times out with the partial prefix that the
// deepest excursion so far already certifies.
LimitWalkPrefix limit_walk_commit(TreeModel& t, double lambda, std::uint32_t k,
                                  std::uint32_t margin, std::uint64_t max_steps,
                                  std::uint64_t seed);
inline constexpr std::uint32_t kDefaultCommitMargin = 40;

// Samples the first k vertices from certified first-step intervals, refining
// each step through the truncation schedule until the widest child interval
// is below tol. Throws RefinementExhausted when the schedule runs out.
LimitWalkPrefix limit_walk_exact(TreeModel& t, double lambda, std::uint32_t k, double tol,
                                 const std::vector<std::uint32_t>& schedule, std::uint64_t seed);

}  // namespace sawtree
