#pragma once

#include <optional>
#include <string>
#include <vector>

#include "knotmeasure/geometry.hpp"

namespace km {

/// Polygon on the unit sphere bounded by minor great-circle arcs, listed
/// counterclockwise as seen from outside the sphere.
struct SphericalPolygon {
  std::vector<Vec3> vertices;
};

/// Normalizes the vertices and fixes counterclockwise order. Throws
/// degenerate for fewer than three distinct vertices or antipodal neighbours.
SphericalPolygon make_spherical_polygon(std::vector<Vec3> vertices);

/// Girard excess: sum of interior angles minus (n - 2) pi.
double spherical_area(const SphericalPolygon& p);

/// Point-in-polygon for convex polygons (strict interior).
bool contains(const SphericalPolygon& p, const Vec3& x);

/// Normalized vertex average, an interior point of a convex polygon.
Vec3 interior_point(const SphericalPolygon& p);

/// Directions along which the projections of two segments cross. The set is
/// this quadrangle together with its antipodal copy.
SphericalPolygon crossing_quadrangle(const Segment& a, const Segment& b);

/// Probability that the projections of two segments cross for a uniformly
/// random direction: area / (2 pi).
double crossing_probability(const Segment& a, const Segment& b);

/// Part of `p` on the side n . x >= 0.
std::optional<SphericalPolygon> clip_halfspace(const SphericalPolygon& p, const Vec3& n);

/// Intersection of two polygons, each inside an open hemisphere. The clip
/// polygon `q` must be convex. Returns zero or one pieces.
std::vector<SphericalPolygon> intersect_polygons(const SphericalPolygon& p, const SphericalPolygon& q);

/// True when the segments lie in one plane (within a relative 1e-12). Such a
/// pair crosses from a null set of directions.
bool coplanar(const Segment& a, const Segment& b);

/// Crossing of the projections of two segments along `dir`, if any.
struct PairCrossing {
  double param_a = 0.0;  // position along a, in [0, 1]
  double param_b = 0.0;
  bool a_over = false;
  int sign = 0;
};
std::optional<PairCrossing> projected_crossing(const Segment& a, const Segment& b, const Vec3& dir);

/// Sign of the crossing of two segments; constant over their quadrangle and
/// its antipode.
int pair_crossing_sign(const Segment& a, const Segment& b);

/// Directions (one of each antipodal pair) where the lone edge crosses both
/// consecutive edges, meets `first` before `second` along its orientation,
/// and passes over exactly one of them. The probability is area / (2 pi).
struct QStar {
  std::vector<SphericalPolygon> pieces;
  double area = 0.0;
  double probability = 0.0;
  int sign_product = 0;  // product of the two crossing signs
};
QStar q_star_consecutive(const Segment& lone, const Segment& first, const Segment& second);

/// Directions where (a, c) and (b, d) both cross and form an alternating
/// pair, for four edges a < b < c < d along the curve.
QStar q_star_quadruple(const Segment& a, const Segment& b, const Segment& c, const Segment& d);

/// Exact double alternating self-linking integral of an open 4-edge curve:
/// (1/2) of the signed probabilities of its alternating configurations.
double sll_exact_4edge(const PolygonalCurve& curve);

/// Closed-form table for the consecutive-triple region, evaluated as
/// literally as its definitions allow. `row` is 0 for the "otherwise" row,
/// 1..4 for a matched row, -1 when the gates hold but no row matches.
struct ClosedFormEvaluation {
  bool gates = false;  // equal signs, w < 0, w0 < 0
  int row = 0;
  std::vector<double> c_values;  // c_{j+1,i+1}, c_{j+2,i+1}, c_{j+1,i}, c_{j+2,i}
  std::optional<SphericalPolygon> polygon;
  double probability = 0.0;
};
ClosedFormEvaluation closed_form_q_star(const Segment& lone, const Segment& first, const Segment& second);

/// Convex region bounded by great circles with the given normals (the set
/// where every w . x >= 0), or nothing if empty or not inside a hemisphere.
std::optional<SphericalPolygon> polygon_from_normals(const std::vector<Vec3>& normals);

std::string dump_polygon(const SphericalPolygon& p);

}  // namespace km
