// Bundled example: an orbifold knot group with its peripheral pair.
#pragma once

#include <string>

#include "regen/multipoly.hpp"
#include "regen/presentation.hpp"

namespace regen {

const std::string& example_presentation_text();
Presentation example_presentation();

/// Published form of the example's trace curve in (x, y), as printed.
MultiPoly printed_curve();
/// The same curve with the y^2 x^2 coefficient read as (7 - x^2).
MultiPoly corrected_curve();

}  // namespace regen
