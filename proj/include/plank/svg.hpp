#pragma once

#include <string>
#include <vector>

#include "plank/geometry.hpp"

namespace plank {

/// Renders a planar instance and its solved homothet as a standalone SVG 1.1
/// document: body outline, hyperplane lines, the shaded homothet and margin
/// annotations.  Output bytes are deterministic for a given input.
std::string render_homothet_svg(const Body& body, const std::vector<Hyperplane>& planes,
                                const HomothetResult& res);

}  // namespace plank
