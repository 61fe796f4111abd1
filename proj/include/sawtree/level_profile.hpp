#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sawtree/numeric.hpp"

namespace sawtree {

// Certified growth floor: level_size(n) >= coeff * ratio^n for every n > beyond.
struct GeomFloor {
    Rational coeff;
    Rational ratio;
};

// Per-level child counts of a spherically symmetric tree: every vertex at
// depth i-1 has child_count(i) children. level_size(n) = prod_{i<=n} child_count(i).
class LevelProfile {
public:
    virtual ~LevelProfile() = default;

    // i >= 1; always >= 1 (constructions that would produce 0 must throw).
    virtual std::int64_t child_count(std::uint32_t i) const = 0;

    const BigInt& level_size(std::uint32_t n) const {
        while (sizes_.size() <= n) {
            std::int64_t c = child_count(static_cast<std::uint32_t>(sizes_.size()));
            sizes_.push_back(sizes_.back() * c);
        }
        return sizes_[n];
    }

    virtual std::optional<GeomFloor> geometric_floor(std::uint32_t /*beyond*/) const {
        return std::nullopt;
    }

    virtual std::string describe() const = 0;

private:
    mutable std::vector<BigInt> sizes_{BigInt(1)};
};

// b-ary tree (b = 1 is the half-infinite ray).
class UniformProfile final : public LevelProfile {
public:
    explicit UniformProfile(std::int64_t b);
    std::int64_t child_count(std::uint32_t) const override { return b_; }
    std::optional<GeomFloor> geometric_floor(std::uint32_t) const override {
        return GeomFloor{Rational(1), Rational(b_)};
    }
    std::string describe() const override { return "uniform:" + std::to_string(b_); }

private:
    std::int64_t b_;
};

// Greedy floor profile: l_1 = floor(x), l_n = floor(x^n / prod_{i<n} l_i).
// Level sizes satisfy x^n - x^{n-1} <= |T_n| <= x^n. Requires rational x >= 1;
// x = 1 degenerates to the ray.
class GreedyFloorProfile final : public LevelProfile {
public:
    explicit GreedyFloorProfile(Rational x);
    std::int64_t child_count(std::uint32_t i) const override;
    std::optional<GeomFloor> geometric_floor(std::uint32_t) const override {
        if (x_ == 1) return GeomFloor{Rational(1), Rational(1)};
        return GeomFloor{Rational(1) - Rational(1) / x_, x_};
    }
    std::string describe() const override;
    const Rational& growth() const { return x_; }

private:
    void fill_to(std::uint32_t i) const;
    Rational x_;
    mutable std::vector<std::int64_t> ell_;
    mutable BigInt prod_{1};
};

// Doubled variant: child count doubled exactly at perfect-square levels, so
// |T'_n| = 2^{floor(sqrt(n))} |T_n|. Positive conductance at its critical bias.
class DoubledSquaresProfile final : public LevelProfile {
public:
    explicit DoubledSquaresProfile(Rational x);
    std::int64_t child_count(std::uint32_t i) const override;
    std::optional<GeomFloor> geometric_floor(std::uint32_t beyond) const override;
    std::string describe() const override;
    const Rational& growth() const { return base_.growth(); }

private:
    GreedyFloorProfile base_;
};

// Polynomially corrected floor profile: l_n = floor(x^n / (n^k prod_{i<n} l_i)).
// Throws InvalidInput (naming the level) if a floor reaches 0.
class PolyCorrectedProfile final : public LevelProfile {
public:
    PolyCorrectedProfile(Rational x, std::uint32_t k);
    std::int64_t child_count(std::uint32_t i) const override;
    std::string describe() const override;

private:
    void fill_to(std::uint32_t i) const;
    Rational x_;
    std::uint32_t k_;
    mutable std::vector<std::int64_t> ell_;
    mutable BigInt prod_{1};
};

// Fixed list of child counts; the last entry repeats forever. Test scaffolding
// and ad-hoc trees.
class ExplicitProfile final : public LevelProfile {
public:
    explicit ExplicitProfile(std::vector<std::int64_t> counts);
    std::int64_t child_count(std::uint32_t i) const override {
        return counts_[std::min<std::size_t>(i - 1, counts_.size() - 1)];
    }
    std::string describe() const override { return "explicit"; }

private:
    std::vector<std::int64_t> counts_;
};

}  // namespace sawtree
