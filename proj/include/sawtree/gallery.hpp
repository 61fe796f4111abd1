#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "sawtree/finite_tree.hpp"
#include "sawtree/level_profile.hpp"
#include "sawtree/tree_model.hpp"

namespace sawtree {

// Spherically symmetric tree driven by a level profile.
class ProfileTree final : public ArenaTree {
public:
    explicit ProfileTree(std::shared_ptr<const LevelProfile> p) : prof_(std::move(p)) {
        if (!prof_) throw InvalidInput("null profile");
    }

    const LevelProfile* profile() const override { return prof_.get(); }
    bool leafless() const override { return true; }  // child counts are >= 1 by contract
    BigInt level_count(std::uint32_t n) override { return prof_->level_size(n); }

    std::optional<ClassId> node_class(NodeId v) override { return depth(v); }
    std::vector<ClassChild> class_children(ClassId c) override {
        return {{c + 1, prof_->child_count(c + 1)}};
    }

protected:
    std::uint32_t expand(NodeId v) override {
        const std::int64_t k = prof_->child_count(depth(v) + 1);
        for (std::int64_t i = 0; i < k; ++i) add_node(v);
        return static_cast<std::uint32_t>(k);
    }

private:
    std::shared_ptr<const LevelProfile> prof_;
};

// Root with two children; the subtrees hanging there are the two given trees
// (their roots become the children).
class JoinTree final : public ArenaTree {
public:
    JoinTree(std::shared_ptr<TreeModel> left, std::shared_ptr<TreeModel> right);

    bool leafless() const override { return left_->leafless() && right_->leafless(); }
    BigInt level_count(std::uint32_t n) override {
        if (n == 0) return BigInt(1);
        return left_->level_count(n - 1) + right_->level_count(n - 1);
    }
    std::optional<ClassId> node_class(NodeId v) override;
    std::vector<ClassChild> class_children(ClassId c) override;
    std::optional<Point> head_of(NodeId) const override { return std::nullopt; }

protected:
    std::uint32_t expand(NodeId v) override;

private:
    ClassId map_class(std::uint8_t part, ClassId inner);

    std::shared_ptr<TreeModel> left_, right_;
    std::vector<std::pair<std::uint8_t, NodeId>> ref_;  // part (1=left, 2=right), inner node
    std::unordered_map<std::uint64_t, ClassId> class_fwd_;
    std::vector<std::pair<std::uint8_t, ClassId>> class_rev_;
};

// Host tree with a copy of the scion grafted at each site: the scion root is
// identified with the site, original host children are kept.
class GraftTree final : public ArenaTree {
public:
    GraftTree(std::shared_ptr<TreeModel> host, std::vector<NodeId> sites,
              std::shared_ptr<TreeModel> scion);

    bool leafless() const override { return host_->leafless() && scion_->leafless(); }
    BigInt level_count(std::uint32_t n) override;
    std::optional<ClassId> node_class(NodeId v) override;
    std::vector<ClassChild> class_children(ClassId c) override;

protected:
    std::uint32_t expand(NodeId v) override;

private:
    ClassId map_class(ClassId inner);

    std::shared_ptr<TreeModel> host_, scion_;
    std::vector<NodeId> sites_;                          // host handles, deduplicated
    std::vector<std::pair<std::uint8_t, NodeId>> ref_;   // part (0=host, 1=scion), inner node
    std::unordered_map<std::uint64_t, ClassId> class_fwd_;
    std::vector<ClassId> class_rev_;
};

// Periodic closure of a finite tree: every leaf grows a fresh copy of the
// whole tree (leaf identified with the copy's root), recursively, lazily.
class PeriodicTree final : public ArenaTree {
public:
    explicit PeriodicTree(FiniteTree base);

    bool leafless() const override { return true; }
    std::optional<ClassId> node_class(NodeId v) override {
        return static_cast<ClassId>(effective(base_of_[v]));
    }
    std::vector<ClassChild> class_children(ClassId c) override;
    const FiniteTree& base() const { return base_; }

protected:
    std::uint32_t expand(NodeId v) override;

private:
    std::int32_t effective(std::int32_t v) const { return base_.is_leaf(v) ? 0 : v; }

    FiniteTree base_;
    std::vector<std::int32_t> base_of_;  // base vertex per arena node
};

// Unique root in (0, 1] of sum over root-to-leaf paths of x^{path length} = 1;
// the critical bias of the periodic closure. Bisection to 1e-12.
double periodic_critical_lambda(const FiniteTree& t);

// Convenience factories.
std::shared_ptr<TreeModel> make_uniform_tree(std::int64_t b);
std::shared_ptr<TreeModel> make_greedy_floor_tree(const Rational& x);
std::shared_ptr<TreeModel> make_doubled_squares_tree(const Rational& x);
std::shared_ptr<TreeModel> make_poly_corrected_tree(const Rational& x, std::uint32_t k);

// Exact level size alongside |T_n|^{1/n}, for n = 1..n_max.
struct GrowthRow {
    std::uint32_t n = 0;
    BigInt size;
    double root = 0.0;
};
std::vector<GrowthRow> growth_estimate(TreeModel& t, std::uint32_t n_max);

}  // namespace sawtree
