#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sawtree/numeric.hpp"
#include "sawtree/rng.hpp"
#include "sawtree/walk.hpp"

namespace sawtree {

// A bridge is a SAW whose first coordinate satisfies x_0 < x_i <= x_n for
// every 0 < i <= n; it is irreducible when no proper split into two bridges
// exists. Counts follow the conventions c_0 = b_0 = 1, p_0 = 0.

struct CountTable {
    std::vector<BigInt> counts;  // counts[n] for n = 0..reached
    std::string kind;
    std::string domain;
    bool complete = true;       // false: the node budget ran out
    std::uint32_t reached = 0;  // largest n with a trustworthy count
};

enum class BridgeDomain { Plane, Quadrant, Strip };

inline constexpr std::uint64_t kDefaultCountBudget = 200'000'000;

// c_n: SAWs from the origin in the domain.
CountTable count_walks(const DomainSpec& domain, std::uint32_t n_max,
                       std::uint64_t budget = kDefaultCountBudget);

// b_n (Plane), b^Q_n (Quadrant: bridges staying in y >= 0), p^{(L)}_n
// (Strip: bridges staying in 0 <= y <= strip_height).
CountTable count_bridges(BridgeDomain bd, std::uint32_t n_max, std::int32_t strip_height = 0,
                         std::uint64_t budget = kDefaultCountBudget);

// p_n: irreducible bridges in the plane.
CountTable count_irreducible_bridges(std::uint32_t n_max,
                                     std::uint64_t budget = kDefaultCountBudget);

// p_{i,n}: irreducible bridges split by the second vertex, (2,0) straight /
// (1,1) up / (1,-1) down; the single-step bridge counts as straight.
struct ThroughCounts {
    CountTable straight, up, down;
};
ThroughCounts count_irreducible_through(std::uint32_t n_max,
                                        std::uint64_t budget = kDefaultCountBudget);

bool is_bridge(const FiniteWalk& w);
bool is_irreducible_bridge(const FiniteWalk& w);

// Unique factorization into irreducible bridges, each re-anchored at the
// origin; concatenating them in order restores w exactly.
std::vector<FiniteWalk> decompose_bridge(const FiniteWalk& w);

// Bridge concatenation (always again a bridge, and self-avoiding).
FiniteWalk concat_bridges(const FiniteWalk& a, const FiniteWalk& b);

// Bracket for the connective constant: max_m b_m^{1/m} <= mu <= min_m c_m^{1/m}.
struct MuBracket {
    double lo = 1.0;
    double hi = 4.0;
    std::uint32_t n = 0;
};
MuBracket mu_bracket(const CountTable& walks, const CountTable& bridges, std::uint32_t n);
MuBracket mu_bracket(std::uint32_t n, std::uint64_t budget = kDefaultCountBudget);

// Truncated generating function sum_{n<=N} p_n x^n of irreducible bridges.
double kesten_partial_sum(const CountTable& irreducible, double x, std::uint32_t N);

// Root in (0, 1] of sum_{n<=m} p_n x^n = 1; strictly decreasing in m and
// bounded below by 1/mu. Bisection well past 1e-12.
double critical_lambda_m(const CountTable& irreducible, std::uint32_t m);

// First-step law of the level-m critical walk through the three possible
// second vertices: phi_i = sum_{n<=m} p_{i,n} lambda_m^n, summing to 1.
std::array<double, 3> phi_critical_m(const ThroughCounts& through, std::uint32_t m);

// Random bridges assembled from Kesten blocks: each block is an irreducible
// bridge of length n <= m_max drawn with probability p_n beta^n / Z. Blocks
// are stored explicitly, so m_max is capped at 12.
class KestenSampler {
public:
    explicit KestenSampler(std::uint32_t m_max, std::uint64_t budget = kDefaultCountBudget);

    struct Draw {
        FiniteWalk walk;
        std::vector<std::uint32_t> block_lengths;
    };
    Draw sample(double beta, std::uint32_t blocks, Rng& rng) const;

    double normalizer(double beta) const;  // Z = sum_{n<=m_max} p_n beta^n
    const CountTable& counts() const { return p_; }
    std::uint32_t m_max() const { return m_max_; }

    static constexpr std::uint32_t kMaxStorableLength = 12;

private:
    std::uint32_t m_max_;
    CountTable p_;
    // blocks_[n]: every irreducible bridge of length n, 2 bits per step.
    std::vector<std::vector<std::uint32_t>> blocks_;
};

}  // namespace sawtree
