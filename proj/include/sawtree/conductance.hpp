#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sawtree/level_profile.hpp"
#include "sawtree/numeric.hpp"
#include "sawtree/tree_model.hpp"

namespace sawtree {

// Edge conductances are lambda^{depth of the child endpoint}; the root mass
// is pi(o) = (#root children) * lambda, so C = pi(o) * P(escape before
// returning to the root).

struct ConductanceInterval {
    double lower = 0.0;
    double upper = 0.0;
    std::uint32_t truncation_level = 0;
    // Provenance of the two endpoints, drawn from {"truncated-exact",
    // "ray-closure", "nash-williams", "ss-closed-form"}.
    std::vector<std::string> methods;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

// A plain real interval; hi may be +infinity.
struct RealInterval {
    double lo = 0.0;
    double hi = 0.0;
};

// pi(o); rejects lambda <= 0 and a childless root.
double pi_root(TreeModel& t, double lambda);

// Effective conductance from the root to level n of the truncated tree,
// computed by exact bottom-up network reduction (classed subtrees are
// reduced once per isomorphism class). A tree with no vertex at level n
// conducts nothing: the result is 0 and *reaches_level is set to false.
Rational truncated_conductance_exact(TreeModel& t, const Rational& lambda, std::uint32_t n,
                                     bool* reaches_level = nullptr);
double truncated_conductance(TreeModel& t, double lambda, std::uint32_t n,
                             bool* reaches_level = nullptr);

// Exact lower endpoint: every level-n vertex closed with an infinite ray.
// Requires lambda > 1 and a leafless tree (the closure is a subnetwork then).
Rational ray_closed_conductance_exact(TreeModel& t, const Rational& lambda, std::uint32_t n);

// Certified interval around C(lambda, T). The upper end is the truncation at
// level n. The lower end closes every level-n vertex with an infinite ray,
// which is a subnetwork of T when T is leafless, hence a true lower bound;
// it needs lambda > 1 to carry mass and is reported as vacuous 0 otherwise.
ConductanceInterval conductance_interval(TreeModel& t, double lambda, std::uint32_t n);

// Spherically symmetric closed forms: R(lambda, T, n) = sum_{m<=n} lambda^{-m}/|T_m|
// exactly, because shorting each level changes nothing by symmetry.
Rational ss_resistance_partial(const LevelProfile& p, const Rational& lambda, std::uint32_t N);

// [partial, partial + tail] where the tail is bounded through the profile's
// geometric floor; hi is +infinity when no convergent floor is available.
RealInterval ss_resistance_interval(const LevelProfile& p, const Rational& lambda,
                                    std::uint32_t N);
// Same bracket evaluated in log space with doubles (for N in the tens of
// thousands); endpoints carry a relative slop of 1e-9 for rounding.
RealInterval ss_resistance_interval_fast(const LevelProfile& p, double lambda, std::uint32_t N);

ConductanceInterval ss_conductance_interval(const LevelProfile& p, const Rational& lambda,
                                            std::uint32_t N);
ConductanceInterval ss_conductance_interval_fast(const LevelProfile& p, double lambda,
                                                 std::uint32_t N);

// Nash-Williams: sum_{n<=N} (lambda^n |T_n|)^{-1} lower-bounds R(lambda, T)
// for any tree with these level sizes. levels[i] = |T_{i+1}|.
double nash_williams_bound(const std::vector<BigInt>& levels, double lambda, std::uint32_t N);

// Monte-Carlo estimate of P(walk from the root reaches level n before
// returning to the root). Chunked into `chains` independent substreams of
// `seed` so the total is reproducible for fixed (samples, seed, chains).
McEstimate escape_probability_mc(TreeModel& t, double lambda, std::uint32_t n,
                                 std::uint64_t samples, std::uint64_t seed,
                                 std::uint32_t chains = 1);

// Certified interval for each child's share of the limit-walk first-step law
// at node `at`: phi(child) = C(branch)/C(total), bracketed by reducing each
// child's subtree to n-1 levels twice (truncated = optimistic branch mass,
// ray-closed = pessimistic). Children are reported in child order.
std::vector<RealInterval> phi_step_intervals(TreeModel& t, NodeId at, double lambda,
                                             std::uint32_t n);

struct PhiPathInterval {
    std::vector<RealInterval> steps;
    RealInterval product;
};

// Product law for the probability that the limit walk starts with the given
// root chain (path[i] must be a child of path[i-1], path[0] a root child).
PhiPathInterval phi_first_k_interval(TreeModel& t, double lambda,
                                     const std::vector<NodeId>& path, std::uint32_t n);

}  // namespace sawtree
