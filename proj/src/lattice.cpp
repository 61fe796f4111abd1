#include "sawtree/lattice.hpp"

#include <charconv>

namespace sawtree {

std::string DomainSpec::name() const {
    switch (kind) {
        case DomainKind::FullPlane: return "plane";
        case DomainKind::ClosedHalfPlane: return "halfplane";
        case DomainKind::UpperHalfPlane: return "upperhalfplane";
        case DomainKind::Quadrant: return "quadrant";
        case DomainKind::Strip: return "strip:" + std::to_string(strip_height);
    }
    return "?";
}

DomainSpec DomainSpec::parse(std::string_view text) {
    if (text == "plane") return plane();
    if (text == "halfplane") return half_plane();
    if (text == "upperhalfplane") return upper_half_plane();
    if (text == "quadrant") return quadrant();
    constexpr std::string_view prefix = "strip:";
    if (text.substr(0, prefix.size()) == prefix) {
        std::string_view num = text.substr(prefix.size());
        std::int32_t h = 0;
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), h);
        if (ec != std::errc() || ptr != num.data() + num.size() || h < 1)
            throw InvalidInput("bad strip height in domain '" + std::string(text) + "'");
        return strip(h);
    }
    throw InvalidInput("unknown domain '" + std::string(text) +
                       "' (expected plane|halfplane|upperhalfplane|quadrant|strip:<L>)");
}

}  // namespace sawtree
