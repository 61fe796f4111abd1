#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "sawtree/errors.hpp"

namespace sawtree {

struct Point {
    std::int32_t x = 0;
    std::int32_t y = 0;

    friend bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(Point a, Point b) { return !(a == b); }
    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
};

struct PointHash {
    std::size_t operator()(Point p) const {
        std::uint64_t v = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.x)) << 32) |
                          static_cast<std::uint32_t>(p.y);
        v *= 0x9E3779B97F4A7C15ull;
        return static_cast<std::size_t>(v ^ (v >> 32));
    }
};

// Canonical step order used everywhere a deterministic child order is needed.
inline constexpr std::array<Point, 4> kSteps = {Point{1, 0}, Point{0, 1}, Point{-1, 0},
                                                Point{0, -1}};
inline constexpr std::array<char, 4> kStepNames = {'E', 'N', 'W', 'S'};

enum class DomainKind : std::uint8_t {
    FullPlane,
    ClosedHalfPlane,   // y >= 0
    UpperHalfPlane,    // y > 0, plus the origin itself
    Quadrant,          // x >= 0 and y >= 0
    Strip,             // 0 <= y <= height
};

// A planar sublattice the walks live in. The origin (0,0) belongs to every
// supported domain and is the root of every tree built on it.
struct DomainSpec {
    DomainKind kind = DomainKind::FullPlane;
    std::int32_t strip_height = 0;  // only meaningful for Strip, >= 1

    bool contains(Point p) const {
        switch (kind) {
            case DomainKind::FullPlane: return true;
            case DomainKind::ClosedHalfPlane: return p.y >= 0;
            case DomainKind::UpperHalfPlane: return p.y > 0 || (p.x == 0 && p.y == 0);
            case DomainKind::Quadrant: return p.x >= 0 && p.y >= 0;
            case DomainKind::Strip: return p.y >= 0 && p.y <= strip_height;
        }
        return false;
    }

    std::string name() const;

    // Accepts: plane | halfplane | upperhalfplane | quadrant | strip:<L>
    static DomainSpec parse(std::string_view text);

    static DomainSpec plane() { return {DomainKind::FullPlane, 0}; }
    static DomainSpec half_plane() { return {DomainKind::ClosedHalfPlane, 0}; }
    static DomainSpec upper_half_plane() { return {DomainKind::UpperHalfPlane, 0}; }
    static DomainSpec quadrant() { return {DomainKind::Quadrant, 0}; }
    static DomainSpec strip(std::int32_t height) {
        if (height < 1) throw InvalidInput("strip height must be >= 1");
        return {DomainKind::Strip, height};
    }
};

inline std::array<Point, 4> neighbors(Point p) {
    return {p + kSteps[0], p + kSteps[1], p + kSteps[2], p + kSteps[3]};
}

// In-domain neighbors of an in-domain point, in E,N,W,S order.
inline std::vector<Point> neighbors_in(const DomainSpec& domain, Point p) {
    if (!domain.contains(p)) throw InvalidInput("point is outside the domain");
    std::vector<Point> out;
    out.reserve(4);
    for (const Point& s : kSteps) {
        Point q = p + s;
        if (domain.contains(q)) out.push_back(q);
    }
    return out;
}

struct Box {
    std::int32_t xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool contains(Point p) const {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }
    void expand(std::int32_t margin) {
        xmin -= margin;
        xmax += margin;
        ymin -= margin;
        ymax += margin;
    }
    void include(Point p) {
        if (p.x < xmin) xmin = p.x;
        if (p.x > xmax) xmax = p.x;
        if (p.y < ymin) ymin = p.y;
        if (p.y > ymax) ymax = p.y;
    }
};

}  // namespace sawtree
