#include "sawtree/walk.hpp"

#include <unordered_set>

namespace sawtree {

FiniteWalk FiniteWalk::from_steps(std::string_view steps, const DomainSpec& domain) {
    std::vector<Point> pts;
    pts.reserve(steps.size() + 1);
    pts.push_back({0, 0});
    for (char c : steps) {
        std::size_t dir = 0;
        for (; dir < kStepNames.size(); ++dir)
            if (kStepNames[dir] == c) break;
        if (dir == kStepNames.size())
            throw InvalidInput(std::string("bad step letter '") + c + "' (expected E/N/W/S)");
        pts.push_back(pts.back() + kSteps[dir]);
    }
    return from_points(std::move(pts), domain);
}

FiniteWalk FiniteWalk::from_points(std::vector<Point> pts, const DomainSpec& domain) {
    FiniteWalk w;
    w.points = std::move(pts);
    if (!w.is_valid_saw(domain)) throw InvalidInput("not a valid self-avoiding walk in domain");
    return w;
}

std::string FiniteWalk::to_steps() const {
    std::string s;
    s.reserve(length());
    for (std::size_t i = 1; i < points.size(); ++i) {
        Point d = points[i] - points[i - 1];
        for (std::size_t dir = 0; dir < kSteps.size(); ++dir)
            if (kSteps[dir] == d) s.push_back(kStepNames[dir]);
    }
    return s;
}

bool FiniteWalk::is_valid_saw(const DomainSpec& domain) const {
    if (points.empty() || points.front() != Point{0, 0}) return false;
    std::unordered_set<Point, PointHash> seen;
    seen.reserve(points.size() * 2);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!domain.contains(points[i])) return false;
        if (!seen.insert(points[i]).second) return false;
        if (i > 0) {
            Point d = points[i] - points[i - 1];
            if (std::abs(d.x) + std::abs(d.y) != 1) return false;
        }
    }
    return true;
}

FiniteWalk concat_walks(const FiniteWalk& a, const FiniteWalk& b) {
    FiniteWalk out;
    out.points = a.points;
    const Point shift = a.head();
    for (std::size_t i = 1; i < b.points.size(); ++i) out.points.push_back(shift + b.points[i]);
    return out;
}

std::vector<FiniteWalk> extensions(const FiniteWalk& w, const DomainSpec& domain) {
    std::vector<FiniteWalk> out;
    const Point head = w.head();
    for (const Point& s : kSteps) {
        Point next = head + s;
        if (!domain.contains(next)) continue;
        bool hit = false;
        for (const Point& q : w.points)
            if (q == next) {
                hit = true;
                break;
            }
        if (hit) continue;
        FiniteWalk e;
        e.points = w.points;
        e.points.push_back(next);
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace sawtree
