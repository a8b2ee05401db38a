#pragma once

// Reference implementations used as test oracles. They are written against
// the definitions directly and share no code paths with the library beyond
// the Diagram and Laurent containers.

#include <cstdint>
#include <vector>

#include "knotmeasure/diagram.hpp"
#include "knotmeasure/geometry.hpp"
#include "knotmeasure/polynomial.hpp"

namespace oracle {

/// Bracket by enumerating enhanced states: every smoothing, then every +/-
/// labelling of the resulting circles and arcs, each contributing
/// (-1)^b q^(b + sum of labels) where b counts B-smoothings. Circles are
/// found by walking strand ends, not by union-find.
km::Laurent bracket(const km::Diagram& d);
km::Laurent enhanced_jones(const km::Diagram& d);

/// Coefficient of x^k in J(e^(-x/2)), from truncated power series products.
km::Rational vassiliev(const km::Laurent& j, unsigned k);

/// Signed count of alternating pairs by brute force over all ordered
/// quadruples of passages on a single component.
long alternating_pair_sum(const km::Diagram& d);

/// Half the sum of signs of crossings between different components.
km::Rational linking_number(const km::Diagram& d);

}  // namespace oracle

namespace corpus {

struct Entry {
  km::PolygonalCurve curve;
  km::Direction dir;
  km::Diagram diagram;
};

/// Diagrams of random-walk polygons seen from sampled directions, keeping
/// generic projections with between min and max crossings.
std::vector<Entry> random_diagrams(std::size_t count, bool closed, std::size_t edges, int min_crossings,
                                   int max_crossings, std::uint64_t seed);

}  // namespace corpus
