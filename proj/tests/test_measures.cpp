#include <cmath>

#include "doctest.h"
#include "knotmeasure/error.hpp"
#include "knotmeasure/generators.hpp"
#include "knotmeasure/measures.hpp"
#include "knotmeasure/vassiliev.hpp"

using namespace km;

TEST_CASE("summary statistics are exact") {
  const std::vector<Rational> v{1, 2, 3, Rational(1, 2)};
  const MCEstimate e = summarize(v, "x", 2, 3, 9);
  CHECK(e.exact_mean == Rational(13, 8));
  CHECK(e.mean == doctest::Approx(1.625));
  // Unbiased variance 1.0625 -> stderr sqrt(1.0625 / 4).
  const double var = ((1 - 1.625) * (1 - 1.625) + (2 - 1.625) * (2 - 1.625) + (3 - 1.625) * (3 - 1.625) +
                      (0.5 - 1.625) * (0.5 - 1.625)) / 3.0;
  CHECK(e.std_error == doctest::Approx(std::sqrt(var / 4.0)));
  CHECK(e.samples_rejected == 3);
  CHECK(e.seed == 9);
}

TEST_CASE("closed curves give the same v2 from every direction") {
  SamplingOptions o;
  o.samples = 100;
  o.seed = 11;
  const MCEstimate e = w_k_estimate(trefoil_curve(), 2, o);
  CHECK(e.exact_mean == Rational(-23, 4));
  CHECK(e.std_error == 0.0);
  const MCEstimate v1 = w_k_estimate(trefoil_curve(), 1, o);
  CHECK(v1.exact_mean == 0);
}

TEST_CASE("estimates do not depend on the thread count") {
  const PolygonalCurve c = random_walk(14, 5, false);
  SamplingOptions o;
  o.samples = 300;
  o.seed = 77;
  o.threads = 1;
  const MCEstimate w1 = w_k_estimate(c, 2, o);
  const MCEstimate s1 = sll_estimate(c, o);
  const Spectrum p1 = knotoid_spectrum(c, o);
  for (unsigned t : {2U, 5U, 16U}) {
    o.threads = t;
    CHECK(w_k_estimate(c, 2, o).exact_mean == w1.exact_mean);
    CHECK(w_k_estimate(c, 2, o).std_error == w1.std_error);
    CHECK(sll_estimate(c, o).exact_mean == s1.exact_mean);
    const Spectrum p = knotoid_spectrum(c, o);
    REQUIRE(p.entries.size() == p1.entries.size());
    for (std::size_t i = 0; i < p.entries.size(); ++i) {
      CHECK(p.entries[i].fingerprint == p1.entries[i].fingerprint);
      CHECK(p.entries[i].count == p1.entries[i].count);
    }
  }
}

TEST_CASE("spectrum regrouping reproduces the w2 sample mean") {
  const PolygonalCurve c = random_walk(10, 8, false);
  SamplingOptions o;
  o.samples = 500;
  o.seed = 3;
  const Spectrum s = knotoid_spectrum(c, o);
  double total = 0.0;
  for (const auto& e : s.entries) total += e.probability;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.regrouped_mean(2) == w_k_estimate(c, 2, o).exact_mean);
}

TEST_CASE("four-edge curves: SLL is half the k2.1 probability on the same stream") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const PolygonalCurve c = random_four_edge(seed);
    SamplingOptions o;
    o.samples = 2000;
    o.seed = seed;
    const Spectrum s = knotoid_spectrum(c, o);
    CHECK(s.entries.size() <= 2);
    for (const auto& e : s.entries) CHECK((e.k21 || e.fingerprint == Laurent::loop()));
    CHECK(sll_estimate(c, o).mean == doctest::Approx(0.5 * s.k21_probability()).epsilon(1e-12));
  }
}

TEST_CASE("k2.1 fingerprints") {
  CHECK(is_k21(enhanced_jones(parse_gauss_code("o: O0+ U1+ U0+ O1+"))));
  CHECK(is_k21(enhanced_jones(mirror(parse_gauss_code("o: O0+ U1+ U0+ O1+")))));
  CHECK_FALSE(is_k21(Laurent::loop()));
}

TEST_CASE("convergence scan opens the curve to the requested gaps") {
  const PolygonalCurve closed = trefoil_curve();
  SamplingOptions o;
  o.samples = 50;
  const auto rows = convergence_scan(closed, {0.0, 0.3}, 2, o);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].estimate.exact_mean == Rational(-23, 4));
  CHECK(rows[1].gap == 0.3);
  CHECK_THROWS_AS(convergence_scan(random_walk(5, 1, false), {0.1}, 2, o), Error);
}

TEST_CASE("near-closed trefoil has the requested endpoint gap") {
  const PolygonalCurve closed = trefoil_curve();
  for (double g : {0.5, 0.2, 0.05}) {
    const PolygonalCurve c = near_closed_trefoil(g);
    CHECK_FALSE(c.closed());
    CHECK((c.vertices().front() - c.vertices().back()).norm() ==
          doctest::Approx(g * closed.diameter()).epsilon(1e-9));
  }
  const PolygonalCurve c = open_with_gap(closed, 0.1 * closed.diameter());
  CHECK((c.vertices().front() - c.vertices().back()).norm() == doctest::Approx(0.1 * closed.diameter()));
}

TEST_CASE("sampling rejects bad options") {
  SamplingOptions o;
  o.samples = 0;
  CHECK_THROWS_AS(w_k_estimate(trefoil_curve(), 2, o), Error);
  o.samples = 10;
  o.max_crossings = 1;
  try {
    w_k_estimate(trefoil_curve(), 2, o);
    FAIL("expected a resource error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::resource);
  }
}
