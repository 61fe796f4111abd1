#pragma once

#include <string>

#include "sawtree/walk.hpp"

namespace sawtree {

// Standalone SVG of a lattice walk: unit squares scaled to cell_px pixels,
// the walk as a single polyline, the origin marked, the line y = 0 drawn as
// a light axis. Output is deterministic (no timestamps or ids).
std::string render_walk_svg(const FiniteWalk& w, int cell_px = 12);

}  // namespace sawtree
