#include "sawtree/walk_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sawtree/errors.hpp"
#include "sawtree/rng.hpp"

namespace sawtree {

namespace {

void check_walk_lambda(double lambda) {
    // Infinite bias is a legal degenerate walk; zero/negative is not.
    if (std::isnan(lambda) || !(lambda > 0.0))
        throw InvalidInput("bias must be positive (infinity allowed)");
}

// One step from v; returns the new node, or nullopt when an infinite-bias
// walk stands on a leaf (nowhere to go).
std::optional<NodeId> step_from(TreeModel& t, NodeId v, double lambda, Rng& rng) {
    auto [first, count] = t.children(v);
    if (v == kRootNode) {
        if (count == 0) throw InvalidInput("root has no children");
        return first + static_cast<NodeId>(rng.uniform_int(count));
    }
    if (std::isinf(lambda)) {
        if (count == 0) return std::nullopt;
        return first + static_cast<NodeId>(rng.uniform_int(count));
    }
    const double x = rng.uniform() * (1.0 + count * lambda);
    if (x < 1.0) return t.parent(v);
    auto idx = static_cast<std::uint32_t>((x - 1.0) / lambda);
    if (idx >= count) idx = count - 1;
    return first + idx;
}

// Ancestors of v at depths 1..k, root-outward.
std::vector<NodeId> root_chain(TreeModel& t, NodeId v, std::uint32_t k) {
    std::vector<NodeId> chain;
    NodeId cur = v;
    while (t.depth(cur) > k) cur = t.parent(cur);
    while (cur != kRootNode) {
        chain.push_back(cur);
        cur = t.parent(cur);
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

}  // namespace

std::vector<double> transition_distribution(std::uint32_t k_children, bool is_root,
                                            double lambda) {
    check_walk_lambda(lambda);
    if (is_root) {
        if (k_children == 0) throw InvalidInput("root has no children");
        return std::vector<double>(k_children, 1.0 / k_children);
    }
    std::vector<double> out(1 + k_children, 0.0);
    if (std::isinf(lambda)) {
        // All mass on the children; a leaf keeps none anywhere (stuck).
        for (std::uint32_t i = 0; i < k_children; ++i) out[1 + i] = 1.0 / k_children;
        return out;
    }
    const double denom = 1.0 + k_children * lambda;
    out[0] = 1.0 / denom;
    for (std::uint32_t i = 0; i < k_children; ++i) out[1 + i] = lambda / denom;
    return out;
}

WalkerTrace simulate(TreeModel& t, double lambda, std::uint64_t max_steps, std::uint64_t seed,
                     bool store_nodes) {
    check_walk_lambda(lambda);
    if (max_steps == 0) throw InvalidInput("need at least one step");
    Rng rng = Rng::substream(seed, "walk-sim");
    WalkerTrace trace;
    trace.seed = seed;
    trace.has_heads = t.head_of(kRootNode).has_value();
    trace.depths.reserve(max_steps + 1);
    trace.depths.push_back(0);
    if (trace.has_heads) {
        trace.heads.reserve(max_steps + 1);
        trace.heads.push_back(*t.head_of(kRootNode));
    }
    if (store_nodes) {
        trace.nodes.reserve(max_steps + 1);
        trace.nodes.push_back(kRootNode);
    }
    NodeId v = kRootNode;
    for (std::uint64_t s = 1; s <= max_steps; ++s) {
        auto next = step_from(t, v, lambda, rng);
        if (!next) {
            trace.stuck = true;
            break;
        }
        v = *next;
        trace.depths.push_back(t.depth(v));
        if (trace.has_heads) trace.heads.push_back(*t.head_of(v));
        if (store_nodes) trace.nodes.push_back(v);
        if (t.depth(v) > trace.max_depth) {
            trace.max_depth = t.depth(v);
            trace.max_depth_step = s;
            trace.deepest_node = v;
        }
    }
    return trace;
}

std::uint64_t line_visit_count(const WalkerTrace& trace) {
    if (!trace.has_heads) throw InvalidInput("trace has no lattice heads");
    std::uint64_t n = 0;
    for (std::size_t i = 1; i < trace.heads.size(); ++i)
        if (trace.heads[i].y == 0) ++n;
    return n;
}

LimitWalkPrefix limit_walk_commit(TreeModel& t, double lambda, std::uint32_t k,
                                  std::uint32_t margin, std::uint64_t max_steps,
                                  std::uint64_t seed) {
    check_walk_lambda(lambda);
    if (k == 0) throw InvalidInput("need k >= 1 limit-walk vertices");
    if (max_steps == 0) throw InvalidInput("need at least one step");
    Rng rng = Rng::substream(seed, "walk-commit");
    const std::uint32_t target = k + margin;
    LimitWalkPrefix out;
    out.margin = margin;
    out.method = "commit-heuristic";
    NodeId v = kRootNode;
    NodeId deepest = kRootNode;
    std::uint32_t max_depth = 0;
    while (out.steps_used < max_steps) {
        auto next = step_from(t, v, lambda, rng);
        ++out.steps_used;
        if (!next) break;  // stuck: no deeper progress is ever possible
        v = *next;
        const std::uint32_t d = t.depth(v);
        if (d > max_depth) {
            max_depth = d;
            deepest = v;
        }
        if (d >= target) {
            out.status = CommitStatus::Committed;
            out.level = k;
            out.nodes = root_chain(t, v, k);
            return out;
        }
    }
    out.status = CommitStatus::Timeout;
    out.level = max_depth > margin ? std::min(k, max_depth - margin) : 0;
    out.nodes = root_chain(t, deepest, out.level);
    return out;
}

LimitWalkPrefix limit_walk_exact(TreeModel& t, double lambda, std::uint32_t k, double tol,
                                 const std::vector<std::uint32_t>& schedule,
                                 std::uint64_t seed) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw InvalidInput("exact sampling needs a positive finite bias");
    if (k == 0) throw InvalidInput("need k >= 1 limit-walk vertices");
    if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
    if (schedule.empty()) throw InvalidInput("refinement schedule must be nonempty");
    Rng rng = Rng::substream(seed, "walk-exact");
    LimitWalkPrefix out;
    out.method = "exact-sequential";
    NodeId at = kRootNode;
    for (std::uint32_t step = 0; step < k; ++step) {
        std::vector<RealInterval> ivs;
        double widest = std::numeric_limits<double>::infinity();
        for (std::uint32_t n : schedule) {
            ivs = phi_step_intervals(t, at, lambda, n);
            widest = 0.0;
            for (const auto& iv : ivs) widest = std::max(widest, iv.hi - iv.lo);
            if (widest < tol) break;
        }
        if (!(widest < tol))
            throw RefinementExhausted("phi intervals still wider than the tolerance after the "
                                      "whole refinement schedule",
                                      widest);
        // Sample from the renormalized midpoints; the certified width bounds
        // the total-variation error of this draw.
        double z = 0.0;
        for (const auto& iv : ivs) z += 0.5 * (iv.lo + iv.hi);
        if (z <= 0.0) throw InvalidInput("no branch carries mass at the current vertex");
        double u = rng.uniform() * z;
        std::uint32_t pick = static_cast<std::uint32_t>(ivs.size()) - 1;
        for (std::uint32_t i = 0; i < ivs.size(); ++i) {
            u -= 0.5 * (ivs[i].lo + ivs[i].hi);
            if (u <= 0.0) {
                pick = i;
                break;
            }
        }
        auto [first, count] = t.children(at);
        (void)count;
        at = first + pick;
        out.nodes.push_back(at);
        out.widths.push_back(widest);
        ++out.steps_used;
    }
    out.level = k;
    return out;
}

}  // namespace sawtree
