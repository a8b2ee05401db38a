#include "knotmeasure/geomprob.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "knotmeasure/error.hpp"

namespace km {

namespace {

constexpr double kSame = 1e-12;

Vec3 unit(const Vec3& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) fail(ErrorKind::degenerate, "zero vector on the sphere");
  return v / n;
}

Vec3 plane_normal(const Vec3& p, const Vec3& q, const Vec3& r) { return unit(cross(q - p, r - p)); }

std::vector<Vec3> dedupe_ring(const std::vector<Vec3>& in) {
  std::vector<Vec3> out;
  for (const auto& v : in) {
    if (out.empty() || (v - out.back()).norm() > kSame) out.push_back(v);
  }
  while (out.size() > 1 && (out.front() - out.back()).norm() <= kSame) out.pop_back();
  return out;
}

double orientation(const std::vector<Vec3>& v, const Vec3& c) {
  double s = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) s += dot(cross(v[k], v[(k + 1) % v.size()]), c);
  return s;
}

bool in_open_hemisphere(const SphericalPolygon& p) {
  // The vertices lie in an open hemisphere iff the origin is outside their
  // convex hull. The nearest hull point then separates them, and it is the
  // nearest point of the affine hull of at most three vertices, so trying
  // all of those as pole candidates decides the question.
  const auto& v = p.vertices;
  const std::size_t n = v.size();
  auto works = [&](const Vec3& h) {
    const double len = h.norm();
    if (len < 1e-300) return false;
    return std::all_of(v.begin(), v.end(), [&](const Vec3& x) { return dot(x, h) > 1e-12 * len; });
  };
  Vec3 sum{};
  for (const auto& x : v) sum = sum + x;
  if (works(sum)) return true;
  for (std::size_t i = 0; i < n; ++i) {
    if (works(v[i])) return true;
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec3 d = v[j] - v[i];
      const double dd = dot(d, d);
      if (dd > 0.0 && works(v[i] - d * (dot(v[i], d) / dd))) return true;
      for (std::size_t k = j + 1; k < n; ++k) {
        const Vec3 normal = cross(d, v[k] - v[i]);
        const double nn = dot(normal, normal);
        if (nn > 0.0 && works(normal * (dot(v[i], normal) / nn))) return true;
      }
    }
  }
  return false;
}

bool is_convex(const SphericalPolygon& p) {
  const auto& v = p.vertices;
  const std::size_t n = v.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3 edge_normal = cross(v[k], v[(k + 1) % n]);
    for (std::size_t m = 0; m < n; ++m) {
      if (m == k || m == (k + 1) % n) continue;
      if (dot(edge_normal, v[m]) < -1e-12) return false;
    }
  }
  return true;
}

SphericalPolygon antipode(const SphericalPolygon& p) {
  std::vector<Vec3> v;
  for (const auto& x : p.vertices) v.push_back(-x);
  return make_spherical_polygon(std::move(v));
}

}  // namespace

SphericalPolygon make_spherical_polygon(std::vector<Vec3> vertices) {
  for (auto& v : vertices) v = unit(v);
  vertices = dedupe_ring(vertices);
  if (vertices.size() < 3) fail(ErrorKind::degenerate, "spherical polygon needs three distinct vertices");
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    if ((vertices[k] + vertices[(k + 1) % vertices.size()]).norm() < 1e-12) {
      fail(ErrorKind::degenerate, "spherical polygon has antipodal neighbouring vertices");
    }
  }
  Vec3 c{};
  for (const auto& v : vertices) c = c + v;
  // Without a well-defined centre (e.g. a hemisphere) the given order is kept.
  if (c.norm() > 1e-12 && orientation(vertices, c / c.norm()) < 0.0) std::reverse(vertices.begin(), vertices.end());
  return {std::move(vertices)};
}

double spherical_area(const SphericalPolygon& p) {
  const auto& v = p.vertices;
  const std::size_t n = v.size();
  if (n < 3) fail(ErrorKind::degenerate, "spherical polygon needs three vertices");
  double angles = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3& a = v[(k + n - 1) % n];
    const Vec3& b = v[k];
    const Vec3& c = v[(k + 1) % n];
    const Vec3 to_prev = a - b * dot(a, b);
    const Vec3 to_next = c - b * dot(c, b);
    if (to_prev.norm() < 1e-15 || to_next.norm() < 1e-15) fail(ErrorKind::degenerate, "degenerate polygon corner");
    double angle = std::atan2(dot(cross(to_next, to_prev), b), dot(to_next, to_prev));
    if (angle < 0.0) angle += 2.0 * std::numbers::pi;
    angles += angle;
  }
  const double area = angles - static_cast<double>(n - 2) * std::numbers::pi;
  return std::clamp(area, 0.0, 4.0 * std::numbers::pi);
}

bool contains(const SphericalPolygon& p, const Vec3& x) {
  const auto& v = p.vertices;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!(dot(cross(v[k], v[(k + 1) % v.size()]), x) > 0.0)) return false;
  }
  return true;
}

Vec3 interior_point(const SphericalPolygon& p) {
  Vec3 c{};
  for (const auto& v : p.vertices) c = c + v;
  return unit(c);
}

bool coplanar(const Segment& a, const Segment& b) {
  const double scale = std::max({a.length(), b.length(), (a.a - b.a).norm(), 1e-300});
  return std::abs(triple(a.direction(), b.direction(), b.a - a.a)) <= 1e-12 * scale * scale * scale;
}

SphericalPolygon crossing_quadrangle(const Segment& a, const Segment& b) {
  const double scale = std::max({a.length(), b.length(), (a.a - b.a).norm(), 1e-300});
  for (const Vec3& p : {a.a, a.b}) {
    for (const Vec3& q : {b.a, b.b}) {
      if ((p - q).norm() <= 1e-12 * scale) fail(ErrorKind::degenerate, "segments share an endpoint");
    }
  }
  if (coplanar(a, b)) {
    fail(ErrorKind::degenerate, "segments are coplanar or intersect");
  }
  return make_spherical_polygon({a.a - b.a, a.a - b.b, a.b - b.b, a.b - b.a});
}

double crossing_probability(const Segment& a, const Segment& b) {
  return spherical_area(crossing_quadrangle(a, b)) / (2.0 * std::numbers::pi);
}

std::optional<SphericalPolygon> clip_halfspace(const SphericalPolygon& p, const Vec3& n) {
  std::vector<Vec3> out;
  const auto& v = p.vertices;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const Vec3& P = v[k];
    const Vec3& Q = v[(k + 1) % v.size()];
    const double dp = dot(n, P), dq = dot(n, Q);
    if (dp >= 0.0) out.push_back(P);
    if ((dp >= 0.0) != (dq >= 0.0)) {
      // The arc is the radial image of the chord, so cut the chord.
      const Vec3 x = Q * dp - P * dq;
      const double len = x.norm();
      if (len > 0.0) out.push_back((dp > dq ? x : -x) / len);
    }
  }
  out = dedupe_ring(out);
  if (out.size() < 3) return std::nullopt;
  SphericalPolygon r{std::move(out)};
  if (spherical_area(r) <= 1e-15) return std::nullopt;
  return r;
}

std::vector<SphericalPolygon> intersect_polygons(const SphericalPolygon& p, const SphericalPolygon& q) {
  if (!in_open_hemisphere(p) || !in_open_hemisphere(q)) {
    fail(ErrorKind::degenerate, "polygon intersection needs polygons inside open hemispheres");
  }
  if (!is_convex(q)) fail(ErrorKind::precondition, "the clip polygon must be convex");
  std::optional<SphericalPolygon> current = p;
  const auto& w = q.vertices;
  for (std::size_t k = 0; k < w.size() && current; ++k) {
    current = clip_halfspace(*current, cross(w[k], w[(k + 1) % w.size()]));
  }
  if (!current) return {};
  return {*current};
}

std::optional<PairCrossing> projected_crossing(const Segment& a, const Segment& b, const Vec3& dir) {
  const Direction d(dir);
  const Frame f = plane_frame(d);
  auto flat = [&](const Vec3& x) { return Vec2{dot(x, f.e1), dot(x, f.e2)}; };
  const Vec2 p = flat(a.a), r = flat(a.b) - p;
  const Vec2 q = flat(b.a), u = flat(b.b) - q;
  const double denom = cross(r, u);
  if (denom == 0.0) return std::nullopt;
  const double s = cross(q - p, u) / denom;
  const double t = cross(q - p, r) / denom;
  if (s <= 0.0 || s >= 1.0 || t <= 0.0 || t >= 1.0) return std::nullopt;
  const double da = dot(a.a + a.direction() * s, d.vec());
  const double db = dot(b.a + b.direction() * t, d.vec());
  PairCrossing c;
  c.param_a = s;
  c.param_b = t;
  c.a_over = da > db;
  c.sign = ((c.a_over ? denom : -denom) > 0.0) ? 1 : -1;
  return c;
}

int pair_crossing_sign(const Segment& a, const Segment& b) {
  const Vec3 xi = interior_point(crossing_quadrangle(a, b));
  const auto c = projected_crossing(a, b, xi);
  if (!c) fail(ErrorKind::degenerate, "quadrangle centre does not give a crossing");
  return c->sign;
}

namespace {

template <typename Pred>
QStar collect(const SphericalPolygon& q1, const SphericalPolygon& q2, const std::vector<Vec3>& splits, Pred pred) {
  QStar out;
  for (const SphericalPolygon& other : {q2, antipode(q2)}) {
    std::vector<SphericalPolygon> pieces = intersect_polygons(q1, other);
    for (const Vec3& n : splits) {
      std::vector<SphericalPolygon> next;
      for (const auto& piece : pieces) {
        for (const Vec3& side : {n, -n}) {
          if (auto half = clip_halfspace(piece, side)) next.push_back(*half);
        }
      }
      pieces = std::move(next);
    }
    for (auto& piece : pieces) {
      if (pred(interior_point(piece))) {
        out.area += spherical_area(piece);
        out.pieces.push_back(std::move(piece));
      }
    }
  }
  out.probability = out.area / (2.0 * std::numbers::pi);
  return out;
}

}  // namespace

QStar q_star_consecutive(const Segment& lone, const Segment& first, const Segment& second) {
  const double scale = std::max({lone.length(), first.length(), second.length()});
  if ((first.b - second.a).norm() > 1e-12 * scale) {
    fail(ErrorKind::precondition, "the second edge must start where the first ends");
  }
  if (coplanar(lone, first) || coplanar(lone, second)) return {};
  const SphericalPolygon qf = crossing_quadrangle(lone, first);
  const SphericalPolygon qs = crossing_quadrangle(lone, second);
  // The order of the two crossings along the lone edge can only flip where
  // the shared vertex projects onto the lone edge's line, or where the two
  // consecutive edges project onto one line.
  const Vec3 shared = first.b;
  const std::vector<Vec3> splits{plane_normal(lone.a, lone.b, shared), plane_normal(first.a, shared, second.b)};
  QStar out = collect(qf, qs, splits, [&](const Vec3& xi) {
    const auto c1 = projected_crossing(lone, first, xi);
    const auto c2 = projected_crossing(lone, second, xi);
    return c1 && c2 && c1->param_a < c2->param_a && c1->a_over != c2->a_over;
  });
  out.sign_product = pair_crossing_sign(lone, first) * pair_crossing_sign(lone, second);
  return out;
}

QStar q_star_quadruple(const Segment& a, const Segment& b, const Segment& c, const Segment& d) {
  if (coplanar(a, c) || coplanar(b, d)) return {};
  const SphericalPolygon qac = crossing_quadrangle(a, c);
  const SphericalPolygon qbd = crossing_quadrangle(b, d);
  QStar out = collect(qac, qbd, {}, [&](const Vec3& xi) {
    const auto x1 = projected_crossing(a, c, xi);
    const auto x2 = projected_crossing(b, d, xi);
    // Exactly one of the later passages (on c and on d) is over.
    return x1 && x2 && x1->a_over != x2->a_over;
  });
  out.sign_product = pair_crossing_sign(a, c) * pair_crossing_sign(b, d);
  return out;
}

double sll_exact_4edge(const PolygonalCurve& curve) {
  if (curve.closed() || curve.edge_count() != 4) {
    fail(ErrorKind::precondition, "exact SLL is available for open curves with exactly 4 edges");
  }
  const Segment e1 = curve.edge(0), e2 = curve.edge(1), e3 = curve.edge(2), e4 = curve.edge(3);
  const QStar quad = q_star_quadruple(e1, e2, e3, e4);
  const QStar lone_first = q_star_consecutive(e1, e3, e4);
  const QStar lone_last = q_star_consecutive(e4, e1, e2);
  return 0.5 * (quad.sign_product * quad.probability + lone_first.sign_product * lone_first.probability +
                lone_last.sign_product * lone_last.probability);
}

std::optional<SphericalPolygon> polygon_from_normals(const std::vector<Vec3>& normals) {
  std::vector<Vec3> candidates;
  for (std::size_t a = 0; a < normals.size(); ++a) {
    for (std::size_t b = a + 1; b < normals.size(); ++b) {
      const Vec3 x = cross(normals[a], normals[b]);
      if (x.norm() < 1e-12) continue;
      for (const Vec3& y : {x / x.norm(), -x / x.norm()}) {
        const bool inside = std::all_of(normals.begin(), normals.end(),
                                        [&](const Vec3& w) { return dot(w, y) >= -1e-12 * w.norm(); });
        const bool fresh = std::none_of(candidates.begin(), candidates.end(),
                                        [&](const Vec3& z) { return (z - y).norm() < 1e-10; });
        if (inside && fresh) candidates.push_back(y);
      }
    }
  }
  if (candidates.size() < 3) return std::nullopt;
  Vec3 c{};
  for (const auto& v : candidates) c = c + v;
  if (c.norm() < 1e-9) return std::nullopt;
  c = c / c.norm();
  const Frame f = plane_frame(Direction(c));
  std::sort(candidates.begin(), candidates.end(), [&](const Vec3& u, const Vec3& v) {
    return std::atan2(dot(u, f.e2), dot(u, f.e1)) < std::atan2(dot(v, f.e2), dot(v, f.e1));
  });
  SphericalPolygon p = make_spherical_polygon(std::move(candidates));
  if (!in_open_hemisphere(p)) return std::nullopt;
  return p;
}

ClosedFormEvaluation closed_form_q_star(const Segment& lone, const Segment& first, const Segment& second) {
  const Vec3 A0 = lone.a, A1 = lone.b, B0 = first.a, B1 = first.b, B2 = second.b;
  // Plane normals named after the vertex triples they are defined by, with
  // edge k running from vertex k-1 to vertex k (lone = i, first = j).
  const Vec3 n1 = plane_normal(A0, B0, B1);  // (i-1, j-1, j)
  const Vec3 n2 = plane_normal(A0, A1, B1);  // (i-1, i, j)
  const Vec3 n3 = plane_normal(A1, B1, B0);  // (i, j, j-1), never defined alongside the table
  const Vec3 n4 = plane_normal(A0, B0, A1);  // (i-1, j-1, i)
  const Vec3 u2 = plane_normal(A0, A1, B2);  // (i-1, i, j+1)
  // u3 is u2 with vertex j+2 in place of j+1. Vertex j+2 only exists in the
  // start-of-edge numbering, where it is the far end of the second edge, so
  // u3 spans the same plane as u2.
  const Vec3 u3 = plane_normal(A0, A1, B2);
  const Vec3 v3 = plane_normal(B0, B2, B1);  // (j-1, j+1, j)

  ClosedFormEvaluation t;
  const int eps_first = pair_crossing_sign(lone, first);
  const int eps_second = pair_crossing_sign(lone, second);
  const double w = dot(cross(u2, -n2), cross(u2, n4));
  const double w0 = dot(cross(v3, -n1), cross(v3, n3));
  t.gates = eps_first == eps_second && w < 0.0 && w0 < 0.0;

  // c_{a,b} = ((p_a - p_b) . n1) eps_{i,j} with the companion numbering in
  // which vertex k starts edge k: p_i = A0, p_{i+1} = A1, p_{j+1} = B1, p_{j+2} = B2.
  const double scale = std::max({lone.length(), first.length(), second.length()});
  auto c = [&](const Vec3& pa, const Vec3& pb) {
    const double v = dot(pa - pb, n1) * eps_first;
    return std::abs(v) <= 1e-12 * scale ? 0.0 : v;
  };
  t.c_values = {c(B1, A1), c(B2, A1), c(B1, A0), c(B2, A0)};
  if (!t.gates) return t;

  const auto& cv = t.c_values;
  const bool tail_pos = cv[2] > 0.0 && cv[3] > 0.0;
  std::vector<Vec3> normals;
  if (tail_pos && cv[0] > 0.0 && cv[1] > 0.0) {
    t.row = 1;
    normals = {n4, n1, -u2, v3};
  } else if (tail_pos && cv[0] < 0.0 && cv[1] < 0.0) {
    t.row = 2;
    normals = {n4, -u3, -u2, v3};
  } else if (tail_pos && cv[0] > 0.0 && cv[1] < 0.0) {
    t.row = 3;
    normals = {n4, n1, -u3, -u2, v3};
  } else if (tail_pos && cv[0] < 0.0 && cv[1] > 0.0) {
    t.row = 4;
    normals = {n4, -u3, n1, -u2, v3};
  } else {
    t.row = -1;
    return t;
  }
  t.polygon = polygon_from_normals(normals);
  if (t.polygon) t.probability = spherical_area(*t.polygon) / (2.0 * std::numbers::pi);
  return t;
}

std::string dump_polygon(const SphericalPolygon& p) {
  std::string out = "orientation ccw, " + std::to_string(p.vertices.size()) + " vertices\n";
  char buf[128];
  for (const auto& v : p.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x, v.y, v.z);
    out += buf;
  }
  return out;
}

}  // namespace km
