#include "knotmeasure/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "knotmeasure/error.hpp"

namespace km {

PolygonalCurve trefoil_curve(std::size_t vertices) {
  if (vertices < 6) fail(ErrorKind::input, "a polygonal trefoil needs at least 6 vertices");
  std::vector<Point3> pts;
  pts.reserve(vertices);
  for (std::size_t i = 0; i < vertices; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(vertices);
    pts.push_back({std::sin(t) + 2.0 * std::sin(2.0 * t), std::cos(t) - 2.0 * std::cos(2.0 * t), -std::sin(3.0 * t)});
  }
  return PolygonalCurve(std::move(pts), true);
}

namespace {

Point3 point_at(const PolygonalCurve& c, double s) {
  const std::size_t n = c.edge_count();
  std::size_t i = 0;
  while (i + 1 < n && c.arc_start(i + 1) <= s) ++i;
  const Segment e = c.edge(i);
  const double t = (s - c.arc_start(i)) / e.length();
  return e.a + e.direction() * std::clamp(t, 0.0, 1.0);
}

}  // namespace

PolygonalCurve open_with_gap(const PolygonalCurve& closed, double gap) {
  if (!closed.closed()) fail(ErrorKind::precondition, "open_with_gap needs a closed curve");
  if (!(gap > 0.0)) fail(ErrorKind::input, "gap must be positive");
  const double L = closed.length();
  const Point3 start = closed.vertices().front();
  auto distance_back = [&](double removed) { return (point_at(closed, L - removed) - start).norm(); };

  // Walk backwards from the basepoint until the gap is first reached, then bisect.
  const int steps = 4096;
  double lo = 0.0, hi = -1.0;
  for (int s = 1; s <= steps; ++s) {
    const double removed = 0.5 * L * s / steps;
    if (distance_back(removed) >= gap) {
      hi = removed;
      break;
    }
    lo = removed;
  }
  if (hi < 0.0) fail(ErrorKind::input, "gap exceeds what the curve can realize");
  for (int it = 0; it < 200 && hi - lo > 1e-15 * L; ++it) {
    const double mid = 0.5 * (lo + hi);
    (distance_back(mid) >= gap ? hi : lo) = mid;
  }
  const double end_arc = L - hi;
  std::vector<Point3> pts;
  const double min_sep = 1e-9 * closed.diameter();
  for (std::size_t i = 0; i < closed.vertices().size(); ++i) {
    if (closed.arc_start(i) < end_arc - min_sep) pts.push_back(closed.vertices()[i]);
  }
  pts.push_back(point_at(closed, end_arc));
  return PolygonalCurve(std::move(pts), false);
}

PolygonalCurve near_closed_trefoil(double gap_fraction, std::size_t vertices) {
  // Cut at a lobe tip (the vertex farthest from the axis) so the ends sit
  // on the outside of the knot.
  std::vector<Point3> pts = trefoil_curve(vertices).vertices();
  const auto tip = std::max_element(pts.begin(), pts.end(), [](const Point3& a, const Point3& b) {
    return a.x * a.x + a.y * a.y < b.x * b.x + b.y * b.y;
  });
  std::rotate(pts.begin(), tip, pts.end());
  const PolygonalCurve closed(std::move(pts), true);
  return open_with_gap(closed, gap_fraction * closed.diameter());
}

PolygonalCurve random_walk(std::size_t edges, std::uint64_t seed, bool closed) {
  if (edges < (closed ? 3U : 1U)) fail(ErrorKind::input, "too few edges for a random walk");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point3> pts{{0.0, 0.0, 0.0}};
  const std::size_t free_steps = closed ? edges - 1 : edges;
  for (std::size_t i = 0; i < free_steps; ++i) {
    const double z = 1.0 - 2.0 * u(gen);
    const double phi = 2.0 * std::numbers::pi * u(gen);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    pts.push_back(pts.back() + Vec3{r * std::cos(phi), r * std::sin(phi), z});
  }
  if (closed) {
    // The closing edge runs from the last point back to the origin.
    return PolygonalCurve(std::move(pts), true);
  }
  return PolygonalCurve(std::move(pts), false);
}

PolygonalCurve random_four_edge(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point3> pts;
  for (int i = 0; i < 5; ++i) pts.push_back({u(gen), u(gen), u(gen)});
  return PolygonalCurve(std::move(pts), false);
}

}  // namespace km
