#include "sawtree/level_profile.hpp"

namespace sawtree {

namespace {
constexpr std::int64_t kMaxChildren = 1'000'000;

std::int64_t checked_count(const BigInt& v, std::uint32_t level, const char* what) {
    if (v < 1)
        throw InvalidInput(std::string(what) + ": child count is 0 at level " +
                           std::to_string(level));
    if (v > kMaxChildren)
        throw InvalidInput(std::string(what) + ": child count exceeds " +
                           std::to_string(kMaxChildren) + " at level " + std::to_string(level));
    return v.convert_to<std::int64_t>();
}

bool is_perfect_square(std::uint32_t i) {
    std::uint32_t r = isqrt_floor(i);
    return r * r == i;
}
}  // namespace

UniformProfile::UniformProfile(std::int64_t b) : b_(b) {
    if (b < 1 || b > kMaxChildren) throw InvalidInput("uniform profile: b out of range");
}

GreedyFloorProfile::GreedyFloorProfile(Rational x) : x_(std::move(x)) {
    if (x_ < 1) throw InvalidInput("greedy floor profile requires x >= 1");
}

void GreedyFloorProfile::fill_to(std::uint32_t i) const {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    while (ell_.size() < i) {
        const std::uint32_t m = static_cast<std::uint32_t>(ell_.size()) + 1;
        // floor(x^m / prod) with exact integers.
        BigInt num = ipow(numerator(x_), m);
        BigInt den = ipow(denominator(x_), m) * prod_;
        BigInt l = num / den;
        ell_.push_back(checked_count(l, m, "greedy floor profile"));
        prod_ *= ell_.back();
    }
}

std::int64_t GreedyFloorProfile::child_count(std::uint32_t i) const {
    fill_to(i);
    return ell_[i - 1];
}

std::string GreedyFloorProfile::describe() const {
    return "prop5:x=" + x_.str();
}

DoubledSquaresProfile::DoubledSquaresProfile(Rational x) : base_(std::move(x)) {}

std::int64_t DoubledSquaresProfile::child_count(std::uint32_t i) const {
    std::int64_t c = base_.child_count(i);
    return is_perfect_square(i) ? 2 * c : c;
}

std::optional<GeomFloor> DoubledSquaresProfile::geometric_floor(std::uint32_t beyond) const {
    // |T'_n| = 2^{floor(sqrt n)} |T_n| >= 2^{floor(sqrt(beyond+1))} (1 - 1/x) x^n for n > beyond.
    GeomFloor g = *base_.geometric_floor(beyond);
    g.coeff *= ipow(BigInt(2), isqrt_floor(beyond + 1));
    return g;
}

std::string DoubledSquaresProfile::describe() const {
    return "prop5bar:x=" + growth().str();
}

PolyCorrectedProfile::PolyCorrectedProfile(Rational x, std::uint32_t k)
    : x_(std::move(x)), k_(k) {
    if (x_ <= 1) throw InvalidInput("poly corrected profile requires x > 1");
}

void PolyCorrectedProfile::fill_to(std::uint32_t i) const {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    while (ell_.size() < i) {
        const std::uint32_t m = static_cast<std::uint32_t>(ell_.size()) + 1;
        BigInt num = ipow(numerator(x_), m);
        BigInt den = ipow(denominator(x_), m) * ipow(BigInt(m), k_) * prod_;
        BigInt l = num / den;
        ell_.push_back(checked_count(l, m, "poly corrected profile"));
        prod_ *= ell_.back();
    }
}

std::int64_t PolyCorrectedProfile::child_count(std::uint32_t i) const {
    fill_to(i);
    return ell_[i - 1];
}

std::string PolyCorrectedProfile::describe() const {
    return "prop4:x=" + x_.str() + ",k=" + std::to_string(k_);
}

ExplicitProfile::ExplicitProfile(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {
    if (counts_.empty()) throw InvalidInput("explicit profile needs at least one count");
    for (std::size_t i = 0; i < counts_.size(); ++i)
        (void)checked_count(BigInt(counts_[i]), static_cast<std::uint32_t>(i + 1),
                            "explicit profile");
}

}  // namespace sawtree
