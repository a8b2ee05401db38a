#include "knotmeasure/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <tuple>

#include "knotmeasure/error.hpp"

namespace km {

namespace {

double diameter_of(const std::vector<Point3>& pts) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const Vec3 d = pts[i] - pts[j];
      d2 = std::max(d2, dot(d, d));
    }
  }
  return std::sqrt(d2);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace

Direction::Direction(const Vec3& v) {
  const double n = v.norm();
  if (!v.finite() || !(n > 0.0)) fail(ErrorKind::input, "direction must be a finite non-zero vector");
  v_ = v / n;
}

Direction Direction::operator-() const {
  Direction d;
  d.v_ = -v_;
  return d;
}

PolygonalCurve::PolygonalCurve(std::vector<Point3> vertices, bool closed)
    : vertices_(std::move(vertices)), closed_(closed) {
  const std::size_t min_vertices = closed_ ? 3 : 2;
  if (vertices_.size() < min_vertices) {
    fail(ErrorKind::input, closed_ ? "closed curve needs at least 3 vertices"
                                   : "open curve needs at least 2 vertices");
  }
  for (const auto& p : vertices_) {
    if (!p.finite()) fail(ErrorKind::input, "curve has a non-finite coordinate");
  }
  diameter_ = diameter_of(vertices_);
  const double min_edge = 1e-15 * std::max(1.0, diameter_);

  const std::size_t n = edge_count();
  arc_start_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    arc_start_[i] = length_;
    const double len = edge(i).length();
    if (!(len > min_edge)) {
      std::ostringstream msg;
      msg << "edge " << i << " has zero length";
      fail(ErrorKind::input, msg.str());
    }
    length_ += len;
  }
  // Consecutive edges folding straight back onto each other.
  const std::size_t joints = closed_ ? n : n - 1;
  for (std::size_t i = 0; i < joints; ++i) {
    const Vec3 u = edge(i).direction();
    const Vec3 w = edge((i + 1) % n).direction();
    if (cross(u, w).norm() <= 1e-15 * u.norm() * w.norm() && dot(u, w) < 0.0) {
      std::ostringstream msg;
      msg << "edges " << i << " and " << (i + 1) % n << " are anti-parallel and overlap";
      fail(ErrorKind::input, msg.str());
    }
  }
}

std::size_t PolygonalCurve::edge_count() const {
  return closed_ ? vertices_.size() : vertices_.size() - 1;
}

Segment PolygonalCurve::edge(std::size_t i) const {
  return {vertices_[i], vertices_[(i + 1) % vertices_.size()]};
}

Frame plane_frame(const Direction& dir) {
  const Vec3& d = dir.vec();
  const double ax = std::abs(d.x), ay = std::abs(d.y), az = std::abs(d.z);
  Vec3 axis{0.0, 0.0, 1.0};
  if (ax <= ay && ax <= az) {
    axis = {1.0, 0.0, 0.0};
  } else if (ay <= az) {
    axis = {0.0, 1.0, 0.0};
  }
  const Vec3 e1 = (axis - d * dot(axis, d)).normalized();
  return {e1, cross(d, e1)};
}

ProjectedCurve project(const PolygonalCurve& curve, const Direction& dir) {
  const Frame f = plane_frame(dir);
  ProjectedCurve out;
  out.closed = curve.closed();
  out.dir = dir;
  out.length = curve.length();
  out.diameter = curve.diameter();
  out.planar.reserve(curve.vertices().size());
  out.depth.reserve(curve.vertices().size());
  for (const auto& p : curve.vertices()) {
    out.planar.push_back({dot(p, f.e1), dot(p, f.e2)});
    out.depth.push_back(dot(p, dir.vec()));
  }
  const std::size_t n = curve.edge_count();
  out.arc_start.resize(n);
  out.edge_length.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.arc_start[i] = curve.arc_start(i);
    out.edge_length[i] = curve.edge(i).length();
  }
  return out;
}

std::string to_string(GenericityClause clause) {
  switch (clause) {
    case GenericityClause::none: return "generic";
    case GenericityClause::edge_parallel_to_direction: return "edge-parallel-to-direction";
    case GenericityClause::non_transverse_crossing: return "non-transverse-crossing";
    case GenericityClause::crossing_near_vertex: return "crossing-near-vertex";
    case GenericityClause::depth_coincidence: return "depth-coincidence";
    case GenericityClause::triple_point: return "triple-point";
  }
  return "unknown";
}

namespace {

struct ProjEdge {
  std::size_t curve;
  std::size_t edge;
};

bool adjacent(const ProjectedCurve& c, std::size_t a, std::size_t b) {
  const std::size_t n = c.edge_count();
  if (a > b) std::swap(a, b);
  if (b == a + 1) return true;
  return c.closed && a == 0 && b == n - 1;
}

void report_violation(GenericityReport* report, GenericityClause clause, const std::string& detail) {
  if (report != nullptr) *report = {clause, detail};
}

std::string edge_name(const ProjEdge& e) {
  std::ostringstream s;
  s << "curve " << e.curve << " edge " << e.edge;
  return s.str();
}

}  // namespace

std::vector<ProjectedCrossing> find_crossings(std::span<const ProjectedCurve> curves, double tol,
                                              GenericityReport* report) {
  if (!(tol > 0.0)) fail(ErrorKind::input, "genericity tolerance must be positive");
  if (report != nullptr) *report = {};

  double scale = 0.0;
  for (const auto& c : curves) scale = std::max(scale, c.diameter);
  const double tol_dist = tol * std::max(scale, 1e-300);

  std::vector<ProjEdge> edges;
  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const auto& c = curves[ci];
    for (std::size_t e = 0; e < c.edge_count(); ++e) {
      const Vec2 r = c.planar[c.edge_end(e)] - c.planar[e];
      if (r.norm() <= tol * c.edge_length[e]) {
        report_violation(report, GenericityClause::edge_parallel_to_direction, edge_name({ci, e}));
        return {};
      }
      edges.push_back({ci, e});
    }
    // Consecutive edges folding back onto each other in the plane.
    const std::size_t n = c.edge_count();
    const std::size_t joints = c.closed ? n : n - 1;
    for (std::size_t e = 0; e < joints; ++e) {
      const std::size_t f = (e + 1) % n;
      const Vec2 r = c.planar[c.edge_end(e)] - c.planar[e];
      const Vec2 u = c.planar[c.edge_end(f)] - c.planar[f];
      if (std::abs(cross(r, u)) <= tol * r.norm() * u.norm() && dot(r, u) < 0.0) {
        report_violation(report, GenericityClause::non_transverse_crossing,
                         edge_name({ci, e}) + " folds onto the next edge");
        return {};
      }
    }
  }

  std::vector<ProjectedCrossing> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& ea = edges[i];
    const auto& ca = curves[ea.curve];
    const Vec2 p = ca.planar[ea.edge];
    const Vec2 r = ca.planar[ca.edge_end(ea.edge)] - p;
    const double lr = r.norm();
    const double axmin = std::min(p.x, p.x + r.x) - tol_dist, axmax = std::max(p.x, p.x + r.x) + tol_dist;
    const double aymin = std::min(p.y, p.y + r.y) - tol_dist, aymax = std::max(p.y, p.y + r.y) + tol_dist;

    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const auto& eb = edges[j];
      if (ea.curve == eb.curve && adjacent(ca, ea.edge, eb.edge)) continue;
      const auto& cb = curves[eb.curve];
      const Vec2 q = cb.planar[eb.edge];
      const Vec2 u = cb.planar[cb.edge_end(eb.edge)] - q;
      if (std::max(q.x, q.x + u.x) < axmin || std::min(q.x, q.x + u.x) > axmax ||
          std::max(q.y, q.y + u.y) < aymin || std::min(q.y, q.y + u.y) > aymax) {
        continue;
      }
      const double lu = u.norm();
      const double denom = cross(r, u);
      const Vec2 qp = q - p;

      if (std::abs(denom) <= tol * lr * lu) {
        // Parallel in the plane: only a problem if the two edges overlap.
        const double off = std::abs(cross(qp, r)) / lr;
        if (off > tol_dist) continue;
        const double t0 = dot(qp, r) / (lr * lr);
        const double t1 = dot(qp + u, r) / (lr * lr);
        const double margin = tol_dist / lr;
        if (std::max(t0, t1) < -margin || std::min(t0, t1) > 1.0 + margin) continue;
        report_violation(report, GenericityClause::non_transverse_crossing,
                         edge_name(ea) + " overlaps " + edge_name(eb));
        return {};
      }

      const double s = cross(qp, u) / denom;
      const double t = cross(qp, r) / denom;
      const double ms = tol_dist / lr;
      const double mt = tol_dist / lu;
      if (s < -ms || s > 1.0 + ms || t < -mt || t > 1.0 + mt) continue;
      if (s < ms || s > 1.0 - ms || t < mt || t > 1.0 - mt) {
        report_violation(report, GenericityClause::crossing_near_vertex,
                         edge_name(ea) + " and " + edge_name(eb));
        return {};
      }

      const double da = ca.depth[ea.edge] + s * (ca.depth[ca.edge_end(ea.edge)] - ca.depth[ea.edge]);
      const double db = cb.depth[eb.edge] + t * (cb.depth[cb.edge_end(eb.edge)] - cb.depth[eb.edge]);
      if (std::abs(da - db) <= tol_dist) {
        report_violation(report, GenericityClause::depth_coincidence,
                         edge_name(ea) + " meets " + edge_name(eb) + " in space");
        return {};
      }

      ProjectedCrossing x;
      x.point = p + r * s;
      const bool a_over = da > db;
      x.over_curve = a_over ? ea.curve : eb.curve;
      x.over_edge = a_over ? ea.edge : eb.edge;
      x.over_param = a_over ? s : t;
      x.under_curve = a_over ? eb.curve : ea.curve;
      x.under_edge = a_over ? eb.edge : ea.edge;
      x.under_param = a_over ? t : s;
      const double orient = a_over ? cross(r, u) : cross(u, r);
      x.sign = orient > 0.0 ? 1 : -1;
      out.push_back(x);
    }
  }

  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      if ((out[i].point - out[j].point).norm() <= tol_dist) {
        report_violation(report, GenericityClause::triple_point, "two crossings coincide in the plane");
        return {};
      }
    }
  }
  return out;
}

GenericityReport check_genericity(std::span<const ProjectedCurve> curves, double tol) {
  GenericityReport report;
  find_crossings(curves, tol, &report);
  return report;
}

GenericityReport check_genericity(const PolygonalCurve& curve, const Direction& dir, double tol) {
  const ProjectedCurve pc = project(curve, dir);
  return check_genericity(std::span<const ProjectedCurve>(&pc, 1), tol);
}

bool is_generic(const PolygonalCurve& curve, const Direction& dir, double tol) {
  return check_genericity(curve, dir, tol).generic();
}

Direction sample_direction(std::uint64_t seed, std::uint64_t index, std::uint64_t attempt) {
  const std::uint64_t stream = seed ^ splitmix64(splitmix64(index) + attempt);
  std::mt19937_64 gen(stream);
  const double z = 1.0 - 2.0 * unit_interval(gen());
  const double phi = 2.0 * std::numbers::pi * unit_interval(gen());
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Direction(Vec3{r * std::cos(phi), r * std::sin(phi), z});
}

std::vector<Direction> sample_directions(std::size_t count, std::uint64_t seed) {
  std::vector<Direction> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_direction(seed, i));
  return out;
}

namespace {

// Closest distance between two 3D segments.
double segment_distance(const Segment& s1, const Segment& s2) {
  const Vec3 d1 = s1.direction(), d2 = s2.direction(), r = s1.a - s2.a;
  const double a = dot(d1, d1), e = dot(d2, d2), f = dot(d2, r);
  const double c = dot(d1, r), b = dot(d1, d2);
  const double denom = a * e - b * b;
  double s = denom > 1e-300 * a * e ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
  double t = (b * s + f) / e;
  if (t < 0.0) {
    t = 0.0;
    s = std::clamp(-c / a, 0.0, 1.0);
  } else if (t > 1.0) {
    t = 1.0;
    s = std::clamp((b - c) / a, 0.0, 1.0);
  }
  return ((s1.a + d1 * s) - (s2.a + d2 * t)).norm();
}

// Signed solid angle of the quadrangle spanned by two segments, divided by 4 pi.
double pair_linking(const Segment& e1, const Segment& e2) {
  const Vec3 r13 = e2.a - e1.a, r14 = e2.b - e1.a, r23 = e2.a - e1.b, r24 = e2.b - e1.b;
  const Vec3 c[4] = {cross(r13, r14), cross(r14, r24), cross(r24, r23), cross(r23, r13)};
  Vec3 n[4];
  for (int k = 0; k < 4; ++k) {
    const double len = c[k].norm();
    if (!(len > 0.0)) return 0.0;
    n[k] = c[k] / len;
  }
  double omega = 0.0;
  for (int k = 0; k < 4; ++k) omega += std::asin(std::clamp(dot(n[k], n[(k + 1) % 4]), -1.0, 1.0));
  const double s = dot(cross(e2.direction(), e1.direction()), r13);
  if (s == 0.0) return 0.0;
  return (s > 0.0 ? omega : -omega) / (4.0 * std::numbers::pi);
}

}  // namespace

double gauss_linking(const PolygonalCurve& a, const PolygonalCurve& b) {
  const PolygonalCurve* first = &a;
  const PolygonalCurve* second = &b;
  // Canonical argument order so that swapping the inputs is bit-identical.
  if (std::lexicographical_compare(b.vertices().begin(), b.vertices().end(), a.vertices().begin(),
                                   a.vertices().end(), [](const Vec3& u, const Vec3& v) {
                                     return std::tie(u.x, u.y, u.z) < std::tie(v.x, v.y, v.z);
                                   })) {
    std::swap(first, second);
  }
  const double touch = 1e-12 * std::max({1.0, a.diameter(), b.diameter()});
  double sum = 0.0;
  for (std::size_t i = 0; i < first->edge_count(); ++i) {
    const Segment e1 = first->edge(i);
    for (std::size_t j = 0; j < second->edge_count(); ++j) {
      const Segment e2 = second->edge(j);
      if (segment_distance(e1, e2) <= touch) {
        std::ostringstream msg;
        msg << "curves intersect (edge " << i << " meets edge " << j << ")";
        fail(ErrorKind::degenerate, msg.str());
      }
      sum += pair_linking(e1, e2);
    }
  }
  return sum;
}

}  // namespace km
