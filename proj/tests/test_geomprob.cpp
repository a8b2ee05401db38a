#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include "doctest.h"
#include "knotmeasure/error.hpp"
#include "knotmeasure/generators.hpp"
#include "knotmeasure/geomprob.hpp"
#include "knotmeasure/measures.hpp"

using namespace km;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Hit {
  double s;     // parameter along a
  bool a_over;  // a is nearer the viewer
};

// a(s) - b(t) = lambda * xi solved by Cramer's rule; the projections cross
// iff both parameters are interior, and a is over iff lambda > 0.
std::optional<Hit> crosses(const Segment& a, const Segment& b, const Vec3& xi) {
  const Vec3 da = a.direction(), db = b.direction(), rhs = b.a - a.a;
  const Vec3 c2 = -db, c3 = -xi;
  const double det = triple(da, c2, c3);
  if (det == 0.0) return std::nullopt;
  const double s = triple(rhs, c2, c3) / det;
  const double t = triple(da, rhs, c3) / det;
  const double lambda = triple(da, c2, rhs) / det;
  if (s <= 0 || s >= 1 || t <= 0 || t >= 1) return std::nullopt;
  return Hit{s, lambda > 0};
}

class Sphere {
 public:
  explicit Sphere(std::uint64_t seed) : gen_(seed) {}
  Vec3 next() {
    while (true) {
      const Vec3 v{n_(gen_), n_(gen_), n_(gen_)};
      if (v.norm() > 1e-9) return v / v.norm();
    }
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> n_;
};

template <typename Pred>
double frequency(std::uint64_t seed, std::size_t n, Pred pred) {
  Sphere s(seed);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) hits += pred(s.next()) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(n);
}

Segment random_segment(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {{u(gen), u(gen), u(gen)}, {u(gen), u(gen), u(gen)}};
}

}  // namespace

TEST_CASE("spherical areas") {
  const SphericalPolygon octant = make_spherical_polygon({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(spherical_area(octant) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
  const SphericalPolygon hemi = make_spherical_polygon({{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}});
  CHECK(spherical_area(hemi) == doctest::Approx(kTwoPi).epsilon(1e-12));
  // Clockwise input is reoriented.
  const SphericalPolygon cw = make_spherical_polygon({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  CHECK(spherical_area(cw) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
  CHECK(contains(cw, Vec3{1, 1, 1} / std::sqrt(3.0)));
  CHECK_THROWS_AS(make_spherical_polygon({{1, 0, 0}, {0, 1, 0}}), Error);
  CHECK_THROWS_AS(make_spherical_polygon({{1, 0, 0}, {-1, 0, 0}, {0, 0, 1}}), Error);
}

TEST_CASE("small triangle area matches point sampling") {
  const SphericalPolygon t = make_spherical_polygon({{1, 0.1, 0.05}, {1, 0.5, 0.2}, {1, 0.2, 0.6}});
  const double f = frequency(1, 2000000, [&](const Vec3& x) { return contains(t, x); });
  CHECK(std::abs(f * 4 * std::numbers::pi - spherical_area(t)) < 1e-3);
}

TEST_CASE("crossing quadrangle membership is exact") {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Sphere sphere(3);
  for (int pair = 0; pair < 20; ++pair) {
    const Segment a = random_segment(gen), b = random_segment(gen);
    const SphericalPolygon q = crossing_quadrangle(a, b);
    // Interior points: random positive combinations of the vertices, and
    // their antipodes.
    for (int i = 0; i < 1000; ++i) {
      Vec3 x{};
      for (const auto& v : q.vertices) x = x + v * (u(gen) + 1e-3);
      x = x.normalized();
      CHECK(crosses(a, b, x).has_value());
      CHECK(crosses(a, b, -x).has_value());
    }
    int outside = 0;
    while (outside < 1000) {
      const Vec3 x = sphere.next();
      if (contains(q, x) || contains(q, -x)) continue;
      CHECK_FALSE(crosses(a, b, x).has_value());
      ++outside;
    }
  }
}

TEST_CASE("crossing probability matches Monte Carlo") {
  std::mt19937_64 gen(4);
  for (int pair = 0; pair < 20; ++pair) {
    const Segment a = random_segment(gen), b = random_segment(gen);
    const double f = frequency(100 + pair, 1000000, [&](const Vec3& x) { return crosses(a, b, x).has_value(); });
    CHECK(std::abs(crossing_probability(a, b) - f) < 2e-3);
  }
  // Far-field decay.
  const Segment a{{0, 0, 0}, {1, 0, 0}};
  double previous = 1.0;
  for (double d : {2.0, 10.0, 100.0}) {
    const double p = crossing_probability(a, {{0.5, -0.5, d}, {0.5, 0.5, d}});
    CHECK(p < previous);
    previous = p;
  }
  CHECK(previous < 1e-4);
  CHECK_THROWS_AS(crossing_quadrangle(a, {{1, 0, 0}, {1, 1, 1}}), Error);
  CHECK_THROWS_AS(crossing_quadrangle(a, {{0.5, -1, 0}, {0.5, 1, 0}}), Error);
}

TEST_CASE("polygon intersection") {
  std::mt19937_64 gen(5);
  const SphericalPolygon q = crossing_quadrangle(random_segment(gen), random_segment(gen));
  const auto self = intersect_polygons(q, q);
  REQUIRE(self.size() == 1);
  CHECK(spherical_area(self[0]) == doctest::Approx(spherical_area(q)).epsilon(1e-12));
  CHECK(intersect_polygons(q, make_spherical_polygon([&] {
          std::vector<Vec3> v;
          for (const auto& x : q.vertices) v.push_back(-x);
          return v;
        }()))
            .empty());

  int compared = 0;
  for (int t = 0; t < 200 && compared < 10; ++t) {
    const SphericalPolygon p1 = crossing_quadrangle(random_segment(gen), random_segment(gen));
    const SphericalPolygon p2 = crossing_quadrangle(random_segment(gen), random_segment(gen));
    const auto pieces = intersect_polygons(p1, p2);
    double area = 0.0;
    for (const auto& p : pieces) area += spherical_area(p);
    if (area < 0.05) continue;
    const double f = frequency(300 + t, 1000000, [&](const Vec3& x) { return contains(p1, x) && contains(p2, x); });
    CHECK(std::abs(f * 4 * std::numbers::pi - area) < 1e-2);  // area in steradians
    CHECK(std::abs(f - area / (4 * std::numbers::pi)) < 1e-3);
    ++compared;
  }
  CHECK(compared == 10);
}

TEST_CASE("consecutive-triple region matches the sampled joint event") {
  std::mt19937_64 gen(6);
  int nonzero = 0;
  for (int t = 0; t < 400 && nonzero < 12; ++t) {
    const Segment lone = random_segment(gen);
    const Segment first = random_segment(gen);
    const Segment second{first.b, random_segment(gen).a};
    const QStar q = q_star_consecutive(lone, first, second);
    if (pair_crossing_sign(lone, first) != pair_crossing_sign(lone, second)) {
      CHECK(q.probability == 0.0);
      continue;
    }
    if (q.probability < 0.01) continue;
    ++nonzero;
    CHECK(q.sign_product == 1);
    const double f = frequency(500 + t, 1000000, [&](const Vec3& x) {
      const auto c1 = crosses(lone, first, x), c2 = crosses(lone, second, x);
      return c1 && c2 && c1->s < c2->s && c1->a_over != c2->a_over;
    });
    CHECK(std::abs(q.probability - f) < 2e-3);
    // Every piece, probed at its centre, has the defining property.
    for (const auto& piece : q.pieces) {
      const Vec3 x = interior_point(piece);
      const auto c1 = crosses(lone, first, x), c2 = crosses(lone, second, x);
      REQUIRE(c1);
      REQUIRE(c2);
      CHECK(c1->s < c2->s);
      CHECK(c1->a_over != c2->a_over);
    }
  }
  CHECK(nonzero == 12);
}

TEST_CASE("closed-form table gates select exactly the non-empty configurations") {
  std::mt19937_64 gen(7);
  int gated = 0;
  for (int t = 0; t < 300; ++t) {
    const Segment lone = random_segment(gen);
    const Segment first = random_segment(gen);
    const Segment second{first.b, random_segment(gen).a};
    const ClosedFormEvaluation e = closed_form_q_star(lone, first, second);
    const QStar q = q_star_consecutive(lone, first, second);
    CHECK(e.gates == (q.probability > 0.0));
    if (!e.gates) CHECK(e.row == 0);
    gated += e.gates ? 1 : 0;
    REQUIRE(e.c_values.size() == 4);
  }
  CHECK(gated > 10);
}

TEST_CASE("polygon from half-space normals") {
  const auto p = polygon_from_normals({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  REQUIRE(p);
  CHECK(spherical_area(*p) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
  CHECK_FALSE(polygon_from_normals({{1, 0, 0}, {-1, 0, 0}, {0, 0, 1}}).has_value());
  const std::string dump = dump_polygon(*p);
  CHECK(dump.rfind("orientation ccw, 3 vertices\n", 0) == 0);
}

TEST_CASE("exact four-edge SLL") {
  const PolygonalCurve planar({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0.5, -1, 0}}, false);
  CHECK(sll_exact_4edge(planar) == 0.0);
  CHECK_THROWS_AS(sll_exact_4edge(random_walk(5, 1, false)), Error);
  CHECK_THROWS_AS(sll_exact_4edge(random_walk(4, 1, true)), Error);
  int nonzero = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const PolygonalCurve c = random_four_edge(seed);
    const double exact = sll_exact_4edge(c);
    CHECK(exact >= 0.0);
    CHECK(exact <= 0.5);
    if (exact == 0.0 || nonzero >= 4) continue;
    ++nonzero;
    SamplingOptions o;
    o.samples = 100000;
    o.seed = seed;
    o.threads = 4;
    const MCEstimate e = sll_estimate(c, o);
    CHECK(std::abs(e.mean - exact) <= 3 * e.std_error);
  }
  CHECK(nonzero == 4);
}
