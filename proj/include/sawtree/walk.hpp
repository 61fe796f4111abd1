#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sawtree/lattice.hpp"

namespace sawtree {

// A finite self-avoiding walk anchored at the origin. points[0] == (0,0);
// consecutive points are lattice neighbors and all points are distinct.
struct FiniteWalk {
    std::vector<Point> points{Point{0, 0}};

    std::uint32_t length() const { return static_cast<std::uint32_t>(points.size()) - 1; }
    Point head() const { return points.back(); }

    // "ENWS" step letters; validates self-avoidance and domain membership.
    static FiniteWalk from_steps(std::string_view steps,
                                 const DomainSpec& domain = DomainSpec::plane());
    static FiniteWalk from_points(std::vector<Point> pts,
                                  const DomainSpec& domain = DomainSpec::plane());

    std::string to_steps() const;

    bool is_valid_saw(const DomainSpec& domain) const;

    Box bounding_box() const {
        Box b;
        for (Point p : points) b.include(p);
        return b;
    }

    friend bool operator==(const FiniteWalk& a, const FiniteWalk& b) {
        return a.points == b.points;
    }
};

// Walk concatenation: b translated so its origin lands on a's head. The
// caller is responsible for the result being self-avoiding (always true when
// both pieces are bridges).
FiniteWalk concat_walks(const FiniteWalk& a, const FiniteWalk& b);

// One-step extensions of w inside the domain, in E,N,W,S order.
std::vector<FiniteWalk> extensions(const FiniteWalk& w, const DomainSpec& domain);

}  // namespace sawtree
