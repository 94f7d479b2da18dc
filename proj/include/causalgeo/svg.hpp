#pragma once

#include "causalgeo/report.hpp"

#include <string>

namespace causalgeo {

// Static SVG 1.1 diagram for scenarios with a drawing mapping:
//   cone-cover-closure     - two adjacent developed sectors with the sample
//                            points, the direct chord and the two apex legs
//   punctured-reflectivity - the punctured axis with the fixed event pair,
//                            its crossing windows and the reachable-gap bar
// Coordinates are rounded to 1e-3 user units; output is fully deterministic.
// Any other scenario throws scenario_error.
std::string emit_svg(const Scenario& s, const Report& report);

}  // namespace causalgeo
