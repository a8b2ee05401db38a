#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "knotmeasure/diagram.hpp"
#include "knotmeasure/error.hpp"
#include "knotmeasure/generators.hpp"
#include "knotmeasure/geometry.hpp"
#include "support.hpp"

using namespace km;

namespace {

PolygonalCurve square(const Vec3& centre, const Vec3& u, const Vec3& v) {
  return PolygonalCurve({centre + u + v, centre - u + v, centre - u - v, centre + u - v}, true);
}

// Brute-force count of transverse intersections of projected edges.
std::size_t count_projected_crossings(const PolygonalCurve& c, const Direction& dir) {
  const Frame f = plane_frame(dir);
  auto flat = [&](const Vec3& p) { return Vec2{dot(p, f.e1), dot(p, f.e2)}; };
  const std::size_t n = c.edge_count();
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (c.closed() && i == 0 && j == n - 1)) continue;
      const Segment a = c.edge(i), b = c.edge(j);
      const Vec2 p = flat(a.a), r = flat(a.b) - p, q = flat(b.a), s = flat(b.b) - q;
      const double den = cross(r, s);
      const double t = cross(q - p, s) / den, w = cross(q - p, r) / den;
      if (t > 0 && t < 1 && w > 0 && w < 1) ++count;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("direction normalizes and rejects zero input") {
  const Direction d({3.0, 0.0, 4.0});
  CHECK(d.vec().norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.vec().x == doctest::Approx(0.6));
  CHECK_THROWS_AS(Direction({0.0, 0.0, 0.0}), Error);
  CHECK_THROWS_AS(Direction({NAN, 0.0, 1.0}), Error);
}

TEST_CASE("plane frame is right-handed around the direction") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Direction d = sample_direction(5, i);
    const Frame f = plane_frame(d);
    CHECK(std::abs(dot(f.e1, f.e2)) < 1e-12);
    CHECK(std::abs(f.e1.norm() - 1.0) < 1e-12);
    CHECK(std::abs(f.e2.norm() - 1.0) < 1e-12);
    CHECK((cross(f.e1, f.e2) - d.vec()).norm() < 1e-12);
  }
}

TEST_CASE("curve construction validates its input") {
  CHECK_THROWS_AS(PolygonalCurve({{0, 0, 0}, {1, 0, 0}}, true), Error);
  CHECK_THROWS_AS(PolygonalCurve({{0, 0, 0}}, false), Error);
  CHECK_THROWS_AS(PolygonalCurve({{0, 0, 0}, {0, 0, 0}, {1, 0, 0}}, false), Error);
  CHECK_THROWS_AS(PolygonalCurve({{0, 0, 0}, {1, 0, 0}, {0.5, 0, 0}}, false), Error);
  const PolygonalCurve c({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}}, false);
  CHECK(c.edge_count() == 2);
  CHECK(c.length() == doctest::Approx(2.0));
  CHECK(c.arc_start(1) == doctest::Approx(1.0));
}

TEST_CASE("sampled directions are reproducible and spread over the sphere") {
  CHECK(sample_direction(1, 7).vec() == sample_direction(1, 7).vec());
  CHECK(!(sample_direction(1, 7).vec() == sample_direction(2, 7).vec()));
  CHECK(!(sample_direction(1, 7, 0).vec() == sample_direction(1, 7, 1).vec()));
  Vec3 mean{};
  double zz = 0.0;
  const auto dirs = sample_directions(100000, 3);
  for (const auto& d : dirs) {
    mean = mean + d.vec();
    zz += d.vec().z * d.vec().z;
  }
  mean = mean / static_cast<double>(dirs.size());
  CHECK(mean.norm() < 0.01);
  CHECK(zz / static_cast<double>(dirs.size()) == doctest::Approx(1.0 / 3.0).epsilon(0.02));
}

TEST_CASE("genericity clauses are reported") {
  const PolygonalCurve c({{0, 0, 0}, {0, 0, 1}, {1, 0, 1}}, false);
  const auto report = check_genericity(c, Direction({0, 0, 1}), kDefaultTolerance);
  CHECK(report.clause == GenericityClause::edge_parallel_to_direction);
  CHECK_FALSE(is_generic(c, Direction({0, 0, 1})));
  CHECK(is_generic(c, Direction({0.3, 0.2, 1})));
  try {
    diagram_of(c, Direction({0, 0, 1}));
    FAIL("expected a degenerate projection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate);
    CHECK(std::string(e.what()).find("edge-parallel-to-direction") != std::string::npos);
  }

  // A crossing exactly through a projected vertex.
  const PolygonalCurve through({{-1, 0, 0}, {1, 0, 0}, {2, 1, 0}, {0, 0, 1}, {0, -1, 1}}, false);
  CHECK(check_genericity(through, Direction({0, 0, 1}), kDefaultTolerance).clause ==
        GenericityClause::crossing_near_vertex);
}

TEST_CASE("crossing detection matches a brute-force segment test") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const PolygonalCurve c = random_walk(15, seed, seed % 2 == 0);
    const Direction d = sample_direction(11, seed);
    if (!is_generic(c, d)) continue;
    const ProjectedCurve pc = project(c, d);
    const auto xs = find_crossings(std::span<const ProjectedCurve>(&pc, 1), kDefaultTolerance, nullptr);
    CHECK(xs.size() == count_projected_crossings(c, d));
  }
}

TEST_CASE("crossing sign and over strand follow the right-hand rule") {
  // Edge along +x at height 1 over an edge along +y at height 0, viewed from +z.
  const PolygonalCurve a({{-1, 0, 1}, {1, 0, 1}}, false);
  const PolygonalCurve b({{0, -1, 0}, {0, 1, 0}}, false);
  const ProjectedCurve pcs[2] = {project(a, Direction({0, 0, 1})), project(b, Direction({0, 0, 1}))};
  const auto xs = find_crossings(std::span<const ProjectedCurve>(pcs, 2), kDefaultTolerance, nullptr);
  REQUIRE(xs.size() == 1);
  CHECK(xs[0].over_curve == 0);
  CHECK(xs[0].sign == 1);
  // Seen from below the roles of over and under swap but the sign is kept.
  const ProjectedCurve below[2] = {project(a, Direction({0, 0, -1})), project(b, Direction({0, 0, -1}))};
  const auto ys = find_crossings(std::span<const ProjectedCurve>(below, 2), kDefaultTolerance, nullptr);
  REQUIRE(ys.size() == 1);
  CHECK(ys[0].over_curve == 1);
  CHECK(ys[0].sign == 1);
}

TEST_CASE("Gauss linking integral") {
  const PolygonalCurve a = square({0, 0, 0}, {1, 0, 0}, {0, 1, 0});
  const PolygonalCurve b = square({1, 0, 0}, {1, 0, 0}, {0, 0, 1});
  CHECK(std::abs(std::abs(gauss_linking(a, b)) - 1.0) < 1e-6);
  CHECK(gauss_linking(a, b) == doctest::Approx(gauss_linking(b, a)).epsilon(1e-12));

  const PolygonalCurve far = square({100, 0, 0}, {1, 0, 0}, {0, 0, 1});
  CHECK(std::abs(gauss_linking(a, far)) < 1e-3);

  const PolygonalCurve touching = square({1, 0, 0}, {1, 0, 0}, {0, 1, 0});
  CHECK_THROWS_AS(gauss_linking(a, touching), Error);
}

TEST_CASE("Gauss linking integral equals the diagrammatic linking number") {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    const PolygonalCurve a = random_walk(6, 100 + t, true);
    const PolygonalCurve b(
        [&] {
          std::vector<Point3> pts;
          const PolygonalCurve w = random_walk(6, 500 + t, true);
          const Vec3 shift{u(gen), u(gen), u(gen)};
          for (const auto& p : w.vertices()) pts.push_back(p + shift);
          return pts;
        }(),
        true);
    const Direction d = sample_direction(77, static_cast<std::uint64_t>(t));
    try {
      const ProjectedCurve pcs[2] = {project(a, d), project(b, d)};
      const Diagram dg = extract_diagram(std::span<const ProjectedCurve>(pcs, 2));
      const double lk = gauss_linking(a, b);
      CHECK(std::abs(lk - static_cast<double>(oracle::linking_number(dg))) < 1e-6);
      ++checked;
    } catch (const Error&) {
    }
  }
  CHECK(checked > 30);
}
