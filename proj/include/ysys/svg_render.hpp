#pragma once

/**
 * Deterministic SVG picture of a time-zero triangulation: the polygon on
 * a circle with numbered vertices, every arc, the two schedule axes
 * (dashed, with circle marks on the even-time axis and cross marks on
 * the odd one), and the puncture when present.
 *
 * Key design decisions.  Output is golden-file friendly: coordinates are
 * printed with fixed two-decimal precision, element order is fixed, and
 * nothing depends on wall-clock state, so the same input always renders
 * to identical bytes.  Vertex k sits at angle pi/2 - 2 pi k / r (vertex
 * 0 on top, ids clockwise), matching the clockwise orientation used for
 * arc endpoints throughout the geometry.
 */

#include <string>

#include "ysys/contfrac.hpp"
#include "ysys/geometry.hpp"

namespace ysys {

/** Render g (assumed at time zero, for the axis decorations). */
std::string render_svg(const LabeledTriangulation& g,
                       const ContinuedFractionTable& t);

}  // namespace ysys
