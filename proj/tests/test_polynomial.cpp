#include "doctest.h"
#include "knotmeasure/diagram.hpp"
#include "knotmeasure/error.hpp"
#include "knotmeasure/polynomial.hpp"
#include "support.hpp"

using namespace km;

namespace {

Laurent q(int e, long c = 1) { return Laurent::monomial(e, BigInt(c)); }

}  // namespace

TEST_CASE("Laurent arithmetic") {
  const Laurent a = q(1) + q(-1);
  CHECK(a == Laurent::loop());
  CHECK((a * a) == q(2) + q(0, 2) + q(-2));
  CHECK((a - a).is_zero());
  CHECK(a.pow(3) == a * a * a);
  CHECK(q(3).inverted() == q(-3));
  CHECK(q(2, 5).shifted(-4) == q(-2, 5));
  CHECK((a * (q(4) - q(0, 7))).divide_exact(a) == q(4) - q(0, 7));
  CHECK_THROWS_AS((q(1) + q(0)).divide_exact(a), Error);
  CHECK((q(-3) + q(-1) - q(5)).to_string() == "q^-3 + q^-1 - q^5");
  CHECK(q(0, -2).to_string() == "-2");
  CHECK(Laurent().to_string() == "0");
  const auto p = (q(2, -3) + q(-1)).pairs();
  REQUIRE(p.size() == 2);
  CHECK(p[0].first == -1);
  CHECK(p[1].second == -3);
}

TEST_CASE("bracket axioms") {
  CHECK(bracket(parse_gauss_code("c:")) == q(1) + q(-1));
  CHECK(bracket(parse_gauss_code("o:")) == q(1) + q(-1));
  CHECK(enhanced_jones(parse_gauss_code("c:")) == Laurent::loop());

  for (const char* code : {"c: O0+ U1+ O2+ U0+ O1+ U2+", "o: O0+ U1+ U0+ O1+", "c: O0+ U1+ ; c: U0+ O1+"}) {
    const Diagram d = parse_gauss_code(code);
    CHECK(enhanced_jones(add_distant_circle(d)) == enhanced_jones(d) * Laurent::loop());
  }
}

TEST_CASE("trefoil and k2.1 polynomials") {
  const Diagram t = parse_gauss_code("c: O0+ U1+ O2+ U0+ O1+ U2+");
  CHECK(enhanced_jones(t) == q(1) + q(3) + q(5) - q(9));
  CHECK(classical_jones(t) == q(2) + q(6) - q(8));  // (q + 1/q) * J = enhanced
  CHECK(enhanced_jones(mirror(t)) == enhanced_jones(t).inverted());
  CHECK(enhanced_jones(parse_gauss_code("o: O0+ U1+ U0+ O1+")) == q(1) - q(2) + q(3) + q(6));
}

TEST_CASE("state sum agrees with the enhanced-state oracle") {
  std::vector<Diagram> ds;
  for (const auto& e : corpus::random_diagrams(40, true, 12, 0, 8, 101)) ds.push_back(e.diagram);
  for (const auto& e : corpus::random_diagrams(40, false, 12, 0, 8, 102)) ds.push_back(e.diagram);
  ds.push_back(parse_gauss_code("c: O0+ U1+ ; c: U0+ O1+"));
  ds.push_back(add_distant_circle(parse_gauss_code("o: O0+ U1+ U0+ O1+")));
  for (const auto& d : ds) {
    CHECK(bracket(d) == oracle::bracket(d));
    CHECK(enhanced_jones(d) == oracle::enhanced_jones(d));
  }
}

TEST_CASE("state sum does not depend on the thread count") {
  for (const auto& e : corpus::random_diagrams(5, true, 30, 13, 16, 7)) {
    const Laurent one = bracket(e.diagram, {24, 1});
    CHECK(bracket(e.diagram, {24, 3}) == one);
    CHECK(bracket(e.diagram, {24, 8}) == one);
  }
}

TEST_CASE("crossing budget") {
  const Diagram t = parse_gauss_code("c: O0+ U1+ O2+ U0+ O1+ U2+");
  try {
    bracket(t, {2, 1});
    FAIL("expected a resource error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::resource);
  }
}

TEST_CASE("Vassiliev coefficients agree with the series oracle") {
  const Diagram t = parse_gauss_code("c: O0+ U1+ O2+ U0+ O1+ U2+");
  CHECK(vassiliev_coefficient(t, 0) == 2);
  CHECK(vassiliev_coefficient(t, 1) == 0);
  CHECK(vassiliev_coefficient(t, 2) == Rational(-23, 4));
  for (const auto& e : corpus::random_diagrams(30, false, 10, 0, 8, 55)) {
    const Laurent j = enhanced_jones(e.diagram);
    for (unsigned k = 0; k <= 4; ++k) CHECK(vassiliev_from_polynomial(j, k) == oracle::vassiliev(j, k));
  }
}

TEST_CASE("skein identity on random projection diagrams") {
  // q^-2 J(K+) - q^2 J(K-) = (1/q - q) J(K0) at every crossing.
  std::size_t checked = 0;
  for (bool closed : {true, false}) {
    for (const auto& e : corpus::random_diagrams(30, closed, 12, 1, 10, closed ? 201 : 202)) {
      for (int x = 0; x < static_cast<int>(e.diagram.crossing_count()); ++x) {
        const Diagram plus = e.diagram.crossing(x).sign > 0 ? e.diagram : switch_crossing(e.diagram, x);
        const Diagram minus = switch_crossing(plus, x);
        const Diagram zero = smooth_crossing(plus, x);
        const Laurent lhs = enhanced_jones(plus).shifted(-2) - enhanced_jones(minus).shifted(2);
        CHECK(lhs == (q(-1) - q(1)) * enhanced_jones(zero));
        ++checked;
      }
    }
  }
  CHECK(checked > 100);
}
