#include "sawtree/svg.hpp"

#include <algorithm>
#include <sstream>

#include "sawtree/errors.hpp"

namespace sawtree {

std::string render_walk_svg(const FiniteWalk& w, int cell_px) {
    if (cell_px < 1) throw InvalidInput("cell size must be >= 1 pixel");
    Box b = w.bounding_box();
    b.expand(1);
    const int c = cell_px;
    const auto px = [&](Point p) { return (p.x - b.xmin) * c; };
    const auto py = [&](Point p) { return (b.ymax - p.y) * c; };  // y grows upward
    const int width = (b.xmax - b.xmin) * c;
    const int height = (b.ymax - b.ymin) * c;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
    // Boundary line y = 0.
    const int y0 = py(Point{0, 0});
    out << "<line x1=\"0\" y1=\"" << y0 << "\" x2=\"" << width << "\" y2=\"" << y0
        << "\" stroke=\"#c8c8c8\" stroke-width=\"1\"/>\n";
    if (w.points.size() > 1) {
        out << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\""
            << std::max(1, c / 4) << "\" stroke-linecap=\"round\" stroke-linejoin=\"round\""
            << " points=\"";
        for (std::size_t i = 0; i < w.points.size(); ++i) {
            if (i) out << ' ';
            out << px(w.points[i]) << ',' << py(w.points[i]);
        }
        out << "\"/>\n";
    }
    out << "<circle cx=\"" << px(Point{0, 0}) << "\" cy=\"" << y0 << "\" r=\""
        << std::max(2, c / 3) << "\" fill=\"#c0392b\"/>\n";
    out << "</svg>\n";
    return out.str();
}

}  // namespace sawtree
