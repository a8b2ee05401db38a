#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "knotmeasure/geometry.hpp"

namespace km {

struct Crossing {
  int id = 0;
  double pos_over = 0.0;
  double pos_under = 0.0;
  int sign = 1;
  int over_component = 0;
  int under_component = 0;
};

/// One passage through a crossing while walking a component.
struct TraversalEvent {
  int crossing = 0;
  bool over = false;
  double position = 0.0;
};

struct Component {
  bool closed = true;
  double length = 0.0;
  std::vector<TraversalEvent> events;  // sorted by position
};

struct CrossingCounts {
  int n_plus = 0;
  int n_minus = 0;
};

/// Knot, knotoid, link or linkoid diagram stored as a signed Gauss code.
/// Open components are walked from the leg (start) to the head (end);
/// closed components from their basepoint at position 0.
class Diagram {
 public:
  Diagram() = default;

  /// Validates that every crossing occurs once over and once under and
  /// rebuilds the per-crossing position data from the traversals.
  Diagram(std::vector<Component> components, std::vector<int> signs);

  const std::vector<Crossing>& crossings() const { return crossings_; }
  const std::vector<Component>& components() const { return components_; }
  std::size_t crossing_count() const { return crossings_.size(); }
  std::size_t component_count() const { return components_.size(); }
  const Crossing& crossing(int id) const { return crossings_.at(static_cast<std::size_t>(id)); }

  /// Component index and event index of the over (or under) passage.
  std::pair<int, int> locate(int crossing, bool over) const;

 private:
  std::vector<Component> components_;
  std::vector<Crossing> crossings_;
  std::vector<std::pair<int, int>> over_at_;
  std::vector<std::pair<int, int>> under_at_;
};

/// Builds the diagram of one or two generic projections sharing a direction.
/// Throws degenerate, naming the violated genericity clause, if the projection
/// is not generic at tolerance `tol`.
Diagram extract_diagram(std::span<const ProjectedCurve> projected, double tol = kDefaultTolerance);
Diagram extract_diagram(const ProjectedCurve& projected, double tol = kDefaultTolerance);
Diagram diagram_of(const PolygonalCurve& curve, const Direction& dir, double tol = kDefaultTolerance);

CrossingCounts crossing_counts(const Diagram& d);
int writhe(const Diagram& d);

/// True iff the two chords alternate along their (common) component.
bool interleaved(const Crossing& c1, const Crossing& c2, const Diagram& d);

/// Parses a compact Gauss code such as "o: O0+ U1+ U0+ O1+" or
/// "c: O0- U1- ; c: U0- O1-". Components are separated by ';' and start
/// with 'c' (closed) or 'o' (open). Each event is O|U, crossing id, sign.
Diagram parse_gauss_code(std::string_view code);
std::string to_gauss_code(const Diagram& d);

/// Dump format, one line per traversal event:
/// `componentId crossingId O|U sign position`.
std::string dump_gauss(const Diagram& d);

// Diagram transformations used by the skein machinery and by tests.
Diagram switch_crossing(const Diagram& d, int crossing);
/// Orientation-respecting smoothing of a crossing; self-crossings split a
/// component, inter-component crossings merge two.
Diagram smooth_crossing(const Diagram& d, int crossing);
Diagram mirror(const Diagram& d);
Diagram add_distant_circle(const Diagram& d);
/// Rotates the traversal of a closed component to start at event `start`.
Diagram rotate_basepoint(const Diagram& d, int component, int start);
/// Opens a closed one-component diagram just before event `at`.
Diagram cut_open(const Diagram& d, int at);
/// Inserts a Reidemeister-I kink after event `after` (-1 = at the start).
Diagram add_kink(const Diagram& d, int component, int after, int sign, bool over_first);

/// Edges are addressed by the event they leave: `after` is an event index,
/// or -1 for the edge leaving the leg of an open component.
struct EdgeRef {
  int component = 0;
  int after = 0;
};

/// Reidemeister-II: pushes edge `a` over edge `b`, creating a bigon. Both
/// edges must border a common face; the relative orientation of the two
/// strands is read off that face.
Diagram add_bigon(const Diagram& d, EdgeRef a, EdgeRef b);

/// Pairs of distinct edges bordering a common face (candidates for add_bigon).
std::vector<std::pair<EdgeRef, EdgeRef>> bigon_candidates(const Diagram& d);

/// Triangular faces on which a Reidemeister-III move is possible, and the move.
std::size_t r3_move_count(const Diagram& d);
Diagram apply_r3(const Diagram& d, std::size_t index);

/// Euler-characteristic check of the signed Gauss code against a connected
/// planar diagram. Diagrams with crossing-free or split components are
/// checked per connected piece.
bool is_planar(const Diagram& d);

/// True when leg and head of the single open component lie in the same
/// face of the planar diagram; such knotoids are of knot type.
bool endpoints_share_region(const Diagram& d);

}  // namespace km
