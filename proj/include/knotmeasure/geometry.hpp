#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "knotmeasure/vec.hpp"

namespace km {

using Point3 = Vec3;

/// Unit vector on S^2. Construction normalizes and rejects zero or non-finite input.
class Direction {
 public:
  Direction() = default;
  explicit Direction(const Vec3& v);

  const Vec3& vec() const { return v_; }
  Direction operator-() const;

 private:
  Vec3 v_{0.0, 0.0, 1.0};
};

/// Ordered 3D polygon. For an open curve with n edges there are n+1 vertices;
/// a closed curve with n edges stores n vertices and wraps around.
class PolygonalCurve {
 public:
  PolygonalCurve() = default;
  PolygonalCurve(std::vector<Point3> vertices, bool closed);

  const std::vector<Point3>& vertices() const { return vertices_; }
  bool closed() const { return closed_; }
  std::size_t edge_count() const;
  Segment edge(std::size_t i) const;

  /// Arc length at the start vertex of edge i.
  double arc_start(std::size_t i) const { return arc_start_[i]; }
  double length() const { return length_; }
  double diameter() const { return diameter_; }

  /// Arc position rescaled to [0, 1).
  double normalized(double arc_position) const { return arc_position / length_; }

 private:
  std::vector<Point3> vertices_;
  bool closed_ = false;
  std::vector<double> arc_start_;
  double length_ = 0.0;
  double diameter_ = 0.0;
};

/// Orthonormal in-plane basis (e1, e2) with e1 x e2 = dir.
struct Frame {
  Vec3 e1;
  Vec3 e2;
};

Frame plane_frame(const Direction& dir);

struct ProjectedCurve {
  std::vector<Vec2> planar;
  std::vector<double> depth;  // p . dir, larger is closer to the viewer
  std::vector<double> arc_start;
  std::vector<double> edge_length;  // 3D lengths
  bool closed = false;
  double length = 0.0;
  double diameter = 0.0;
  Direction dir;

  std::size_t edge_count() const { return closed ? planar.size() : planar.size() - 1; }
  std::size_t edge_end(std::size_t i) const { return (i + 1) % planar.size(); }
};

ProjectedCurve project(const PolygonalCurve& curve, const Direction& dir);

enum class GenericityClause {
  none,
  edge_parallel_to_direction,  // (a)
  non_transverse_crossing,     // (b) tangency or overlapping projected edges
  crossing_near_vertex,        // (b) intersection too close to a projected vertex
  depth_coincidence,           // strands meet in space at the crossing
  triple_point,                // (c)
};

std::string to_string(GenericityClause clause);

struct GenericityReport {
  GenericityClause clause = GenericityClause::none;
  std::string detail;

  bool generic() const { return clause == GenericityClause::none; }
};

/// Default genericity tolerance, relative to the curve diameter for lengths.
inline constexpr double kDefaultTolerance = 1e-9;

/// One transverse intersection of two projected edges.
struct ProjectedCrossing {
  std::size_t over_curve = 0;
  std::size_t over_edge = 0;
  double over_param = 0.0;  // in [0, 1] along the edge
  std::size_t under_curve = 0;
  std::size_t under_edge = 0;
  double under_param = 0.0;
  int sign = 0;
  Vec2 point;
};

/// Finds all crossings among the projected curves. Stops at the first
/// genericity violation, which is written to `report` when non-null.
std::vector<ProjectedCrossing> find_crossings(std::span<const ProjectedCurve> curves, double tol,
                                              GenericityReport* report);

GenericityReport check_genericity(std::span<const ProjectedCurve> curves, double tol);
GenericityReport check_genericity(const PolygonalCurve& curve, const Direction& dir, double tol);
bool is_generic(const PolygonalCurve& curve, const Direction& dir, double tol = kDefaultTolerance);

/// Counter-based sampling: direction (seed, index, attempt) never depends on
/// how many other directions were drawn or on thread scheduling.
Direction sample_direction(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt = 0);
std::vector<Direction> sample_directions(std::size_t count, std::uint64_t seed);

/// Gauss linking integral summed over edge pairs (exact per-pair solid angles).
/// Throws degenerate if the curves meet in space.
double gauss_linking(const PolygonalCurve& a, const PolygonalCurve& b);

}  // namespace km
