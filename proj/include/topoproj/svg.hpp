#pragma once

#include <string>

#include "topoproj/persistence.hpp"
#include "topoproj/point_cloud.hpp"

namespace topoproj {

// Deterministic SVG renderings: same input, same bytes. Coordinates are
// emitted with fixed six-digit precision and no locale dependence.

// Birth/death scatter with the diagonal; infinite deaths sit at 1.05x the
// largest finite coordinate and use a triangular marker.
std::string render_diagram_svg(const PersistenceDiagram& d);

// First two coordinates of each point (second = 0 for 1-d clouds).
std::string render_scatter_svg(const PointCloud& x);

}  // namespace topoproj
