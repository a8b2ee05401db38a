#pragma once

#include <cstdint>

#include "knotmeasure/geometry.hpp"

namespace km {

/// Closed trefoil (sin t + 2 sin 2t, cos t - 2 cos 2t, -sin 3t) sampled at
/// `vertices` equally spaced parameter values.
PolygonalCurve trefoil_curve(std::size_t vertices = 24);

/// Open curve following `closed` from vertex 0 around to the point whose
/// straight-line distance back to vertex 0 first reaches `gap`.
PolygonalCurve open_with_gap(const PolygonalCurve& closed, double gap);

/// Trefoil opened with an endpoint gap of `gap_fraction` times its diameter.
PolygonalCurve near_closed_trefoil(double gap_fraction, std::size_t vertices = 24);

/// Random walk of unit steps in uniformly random directions. Closed walks
/// append a final edge back to the start.
PolygonalCurve random_walk(std::size_t edges, std::uint64_t seed, bool closed);

/// Open 4-edge curve with vertices uniform in the unit cube.
PolygonalCurve random_four_edge(std::uint64_t seed);

}  // namespace km
