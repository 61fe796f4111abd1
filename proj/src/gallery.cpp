#include "sawtree/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "sawtree/errors.hpp"

namespace sawtree {

namespace {

std::uint64_t pack(std::uint8_t part, std::uint32_t inner) {
    return (static_cast<std::uint64_t>(part) << 32) | inner;
}

}  // namespace

// ---------------------------------------------------------------- JoinTree

JoinTree::JoinTree(std::shared_ptr<TreeModel> left, std::shared_ptr<TreeModel> right)
    : left_(std::move(left)), right_(std::move(right)) {
    if (!left_ || !right_) throw InvalidInput("join needs two trees");
    ref_.push_back({0, kRootNode});  // placeholder for the new root
}

ClassId JoinTree::map_class(std::uint8_t part, ClassId inner) {
    const std::uint64_t key = pack(part, inner);
    auto it = class_fwd_.find(key);
    if (it != class_fwd_.end()) return it->second;
    const ClassId local = static_cast<ClassId>(class_rev_.size());
    class_fwd_.emplace(key, local);
    class_rev_.push_back({part, inner});
    return local;
}

std::optional<ClassId> JoinTree::node_class(NodeId v) {
    const auto [part, inner] = ref_[v];
    if (part == 0) return std::nullopt;  // the new root is its own thing
    TreeModel& t = part == 1 ? *left_ : *right_;
    const auto c = t.node_class(inner);
    if (!c) return std::nullopt;
    return map_class(part, *c);
}

std::vector<ClassChild> JoinTree::class_children(ClassId c) {
    const auto [part, inner] = class_rev_.at(c);
    TreeModel& t = part == 1 ? *left_ : *right_;
    std::vector<ClassChild> out;
    for (const auto& cc : t.class_children(inner)) out.push_back({map_class(part, cc.cls), cc.count});
    return out;
}

std::uint32_t JoinTree::expand(NodeId v) {
    const auto [part, inner] = ref_[v];
    if (part == 0) {
        add_node(v);
        ref_.push_back({1, kRootNode});
        add_node(v);
        ref_.push_back({2, kRootNode});
        return 2;
    }
    TreeModel& t = part == 1 ? *left_ : *right_;
    const auto [first, count] = t.children(inner);
    for (std::uint32_t i = 0; i < count; ++i) {
        add_node(v);
        ref_.push_back({part, first + i});
    }
    return count;
}

// --------------------------------------------------------------- GraftTree

GraftTree::GraftTree(std::shared_ptr<TreeModel> host, std::vector<NodeId> sites,
                     std::shared_ptr<TreeModel> scion)
    : host_(std::move(host)), scion_(std::move(scion)), sites_(std::move(sites)) {
    if (!host_ || !scion_) throw InvalidInput("graft needs a host and a scion");
    std::sort(sites_.begin(), sites_.end());
    sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
    for (NodeId s : sites_) {
        if (s >= host_->node_count()) throw InvalidInput("graft site is not a known host node");
    }
    ref_.push_back({0, kRootNode});
}

ClassId GraftTree::map_class(ClassId inner) {
    const std::uint64_t key = inner;
    auto it = class_fwd_.find(key);
    if (it != class_fwd_.end()) return it->second;
    const ClassId local = static_cast<ClassId>(class_rev_.size());
    class_fwd_.emplace(key, local);
    class_rev_.push_back(inner);
    return local;
}

std::optional<ClassId> GraftTree::node_class(NodeId v) {
    const auto [part, inner] = ref_[v];
    if (part == 0) return std::nullopt;  // host side: sites break symmetry
    const auto c = scion_->node_class(inner);
    if (!c) return std::nullopt;
    return map_class(*c);
}

std::vector<ClassChild> GraftTree::class_children(ClassId c) {
    std::vector<ClassChild> out;
    for (const auto& cc : scion_->class_children(class_rev_.at(c)))
        out.push_back({map_class(cc.cls), cc.count});
    return out;
}

std::uint32_t GraftTree::expand(NodeId v) {
    const auto [part, inner] = ref_[v];
    TreeModel& t = part == 0 ? *host_ : *scion_;
    const auto [first, count] = t.children(inner);
    std::uint32_t total = count;
    for (std::uint32_t i = 0; i < count; ++i) {
        add_node(v);
        ref_.push_back({part, first + i});
    }
    if (part == 0 && std::binary_search(sites_.begin(), sites_.end(), inner)) {
        const auto [sfirst, scount] = scion_->children(kRootNode);
        for (std::uint32_t i = 0; i < scount; ++i) {
            add_node(v);
            ref_.push_back({1, sfirst + i});
        }
        total += scount;
    }
    return total;
}

BigInt GraftTree::level_count(std::uint32_t n) {
    BigInt total = host_->level_count(n);
    for (NodeId s : sites_) {
        const std::uint32_t d = host_->depth(s);
        if (d < n) total += scion_->level_count(n - d);
    }
    return total;
}

// ------------------------------------------------------------ PeriodicTree

PeriodicTree::PeriodicTree(FiniteTree base) : base_(std::move(base)) {
    if (base_.verts.empty() || base_.verts[0].kids.empty())
        throw InvalidInput("periodic closure needs a root with at least one child");
    base_of_.push_back(0);
}

std::uint32_t PeriodicTree::expand(NodeId v) {
    const std::int32_t b = effective(base_of_[v]);
    const auto& kids = base_.verts[b].kids;
    for (std::int32_t k : kids) {
        add_node(v);
        base_of_.push_back(k);
    }
    return static_cast<std::uint32_t>(kids.size());
}

std::vector<ClassChild> PeriodicTree::class_children(ClassId c) {
    std::vector<ClassChild> out;
    for (std::int32_t k : base_.verts[c].kids)
        out.push_back({static_cast<ClassId>(effective(k)), 1});
    return out;
}

double periodic_critical_lambda(const FiniteTree& t) {
    if (t.verts.empty() || t.verts[0].kids.empty())
        throw InvalidInput("periodic closure needs a root with at least one child");
    const auto depths = t.leaf_depths();
    const auto f = [&](double x) {
        double s = 0.0;
        for (std::uint32_t d : depths) s += std::pow(x, static_cast<double>(d));
        return s - 1.0;
    };
    double lo = 1e-9, hi = 1.0;
    // The sum at 1 is the leaf count, so it is >= 1; anything visibly below
    // that means the leaf scan itself is broken.
    if (f(hi) < -1e-9) throw std::logic_error("leaf-depth sum below 1 at x=1");
    if (f(hi) <= 0.0) return hi;  // exactly one leaf: the root is exactly 1
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// ------------------------------------------------------------- factories

std::shared_ptr<TreeModel> make_uniform_tree(std::int64_t b) {
    return std::make_shared<ProfileTree>(std::make_shared<UniformProfile>(b));
}

std::shared_ptr<TreeModel> make_greedy_floor_tree(const Rational& x) {
    return std::make_shared<ProfileTree>(std::make_shared<GreedyFloorProfile>(x));
}

std::shared_ptr<TreeModel> make_doubled_squares_tree(const Rational& x) {
    return std::make_shared<ProfileTree>(std::make_shared<DoubledSquaresProfile>(x));
}

std::shared_ptr<TreeModel> make_poly_corrected_tree(const Rational& x, std::uint32_t k) {
    return std::make_shared<ProfileTree>(std::make_shared<PolyCorrectedProfile>(x, k));
}

std::vector<GrowthRow> growth_estimate(TreeModel& t, std::uint32_t n_max) {
    if (n_max < 1) throw InvalidInput("growth estimate needs n_max >= 1");
    std::vector<GrowthRow> out;
    out.reserve(n_max);
    for (std::uint32_t n = 1; n <= n_max; ++n) {
        BigInt sz = t.level_count(n);
        double root = sz == 0 ? 0.0 : std::exp(log_big(sz) / n);
        out.push_back({n, std::move(sz), root});
    }
    return out;
}

}  // namespace sawtree
