#pragma once

#include <string>
#include <vector>

#include "knotmeasure/diagram.hpp"
#include "knotmeasure/polynomial.hpp"

namespace km {

/// Two interleaved self-crossings with passages j4 < j3 < j2 < j1 along the
/// traversal: `first` owns j4 and j2, `second` owns j3 and j1. The pair is
/// alternating when exactly one of j1, j2 is an over passage.
struct AlternatingPair {
  int first = 0;   // crossing owning j4 and j2
  int second = 0;  // crossing owning j3 and j1
  int sign_product = 1;
};

/// All alternating pairs of a one-component diagram, read from its
/// basepoint (closed) or leg (open).
std::vector<AlternatingPair> alternating_pairs(const Diagram& d);

/// Sum of sign products over alternating pairs.
long alternating_pair_sum(const Diagram& d);

/// Gauss-diagram form of the second coefficient, normalized so that
/// v2 = 1/4 + 6 * hat_v2. Equals minus one half of the alternating-pair sum.
Rational hat_v2(const Diagram& d);
Rational v2_combinatorial(const Diagram& d);

/// Half the algebraic sum of crossings between the two components.
Rational linkoid_lk(const Diagram& d);

struct RelationCheck {
  std::string name;
  Rational lhs;
  Rational rhs;
  bool pass = false;
};

struct SkeinReport {
  std::string kind;  // "knot", "knot-type knotoid" or "knotoid"
  int crossing = 0;
  int sign = 1;
  std::vector<RelationCheck> checks;
  // Extra quantities for the general knotoid relation.
  Rational r = 0;
  Rational l = 0;

  bool pass() const;
};

/// Crossing-change relations for v0, v1, v2 at one crossing of a knot diagram.
SkeinReport verify_knot_skein(const Diagram& d, int crossing, const BracketOptions& opts = {});

/// Crossing-change relations at one crossing of a knotoid diagram. Knot-type
/// knotoids are checked against the knot relations; others against the
/// r/l relations built from the first-passage ascending diagram.
SkeinReport verify_knotoid_skein(const Diagram& d, int crossing, const BracketOptions& opts = {});

/// Crossings switched to make a knotoid ascending (first passage under).
std::vector<int> ascending_switches(const Diagram& d);

/// Inter-component crossings switched so that component 0 lies entirely
/// under component 1.
std::vector<int> separating_switches(const Diagram& d);

}  // namespace km
