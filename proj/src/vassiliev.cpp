#include "knotmeasure/vassiliev.hpp"

#include <algorithm>

#include "knotmeasure/error.hpp"

namespace km {

namespace {

void require_single_component(const Diagram& d, const char* what) {
  if (d.component_count() != 1) {
    fail(ErrorKind::precondition, std::string(what) + " needs a one-component diagram, got " +
                                      std::to_string(d.component_count()) + " components");
  }
}

RelationCheck relation(std::string name, Rational lhs, Rational rhs) {
  RelationCheck c{std::move(name), std::move(lhs), std::move(rhs), false};
  c.pass = c.lhs == c.rhs;
  return c;
}

struct SkeinTriple {
  Diagram plus, minus, zero;
  int sign;
};

SkeinTriple skein_triple(const Diagram& d, int crossing) {
  const int sign = d.crossing(crossing).sign;
  Diagram plus = sign > 0 ? d : switch_crossing(d, crossing);
  Diagram minus = sign > 0 ? switch_crossing(d, crossing) : d;
  Diagram zero = smooth_crossing(d, crossing);
  return {std::move(plus), std::move(minus), std::move(zero), sign};
}

Diagram switch_all(Diagram d, const std::vector<int>& crossings) {
  for (int x : crossings) d = switch_crossing(d, x);
  return d;
}

Rational sign_sum(const Diagram& d, const std::vector<int>& crossings) {
  long s = 0;
  for (int x : crossings) s += d.crossing(x).sign;
  return Rational(s);
}

}  // namespace

std::vector<AlternatingPair> alternating_pairs(const Diagram& d) {
  require_single_component(d, "alternating pairs");
  const auto& evs = d.components()[0].events;
  const std::size_t m = d.crossing_count();
  std::vector<int> first(m, -1), second(m, -1);
  for (int k = 0; k < static_cast<int>(evs.size()); ++k) {
    auto& slot = first[evs[k].crossing] < 0 ? first : second;
    slot[evs[k].crossing] = k;
  }
  std::vector<AlternatingPair> out;
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      // j4 < j3 < j2 < j1 with x owning (j4, j2) and y owning (j3, j1).
      const int j4 = first[x], j2 = second[x], j3 = first[y], j1 = second[y];
      if (!(j4 < j3 && j3 < j2 && j2 < j1)) continue;
      if (evs[j1].over == evs[j2].over) continue;
      out.push_back({static_cast<int>(x), static_cast<int>(y),
                     d.crossing(static_cast<int>(x)).sign * d.crossing(static_cast<int>(y)).sign});
    }
  }
  return out;
}

long alternating_pair_sum(const Diagram& d) {
  long s = 0;
  for (const auto& p : alternating_pairs(d)) s += p.sign_product;
  return s;
}

Rational hat_v2(const Diagram& d) { return Rational(-alternating_pair_sum(d), 2); }

Rational v2_combinatorial(const Diagram& d) { return Rational(1, 4) + 6 * hat_v2(d); }

Rational linkoid_lk(const Diagram& d) {
  if (d.component_count() != 2) {
    fail(ErrorKind::precondition, "linking number needs exactly two components, got " +
                                      std::to_string(d.component_count()));
  }
  long s = 0;
  for (const auto& x : d.crossings()) {
    if (x.over_component != x.under_component) s += x.sign;
  }
  return Rational(s, 2);
}

bool SkeinReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.pass; });
}

std::vector<int> ascending_switches(const Diagram& d) {
  require_single_component(d, "ascending diagram");
  std::vector<bool> seen(d.crossing_count(), false);
  std::vector<int> out;
  for (const auto& e : d.components()[0].events) {
    if (seen[e.crossing]) continue;
    seen[e.crossing] = true;
    if (e.over) out.push_back(e.crossing);
  }
  return out;
}

std::vector<int> separating_switches(const Diagram& d) {
  if (d.component_count() != 2) fail(ErrorKind::precondition, "separation needs exactly two components");
  std::vector<int> out;
  for (const auto& x : d.crossings()) {
    if (x.over_component == 0 && x.under_component == 1) out.push_back(x.id);
  }
  return out;
}

SkeinReport verify_knot_skein(const Diagram& d, int crossing, const BracketOptions& opts) {
  require_single_component(d, "knot skein check");
  if (!d.components()[0].closed) fail(ErrorKind::precondition, "knot skein check needs a closed component");
  d.locate(crossing, true);
  const auto t = skein_triple(d, crossing);

  const Rational v0p = vassiliev_coefficient(t.plus, 0, opts), v0m = vassiliev_coefficient(t.minus, 0, opts);
  const Rational v1p = vassiliev_coefficient(t.plus, 1, opts), v1m = vassiliev_coefficient(t.minus, 1, opts);
  const Rational v2p = vassiliev_coefficient(t.plus, 2, opts), v2m = vassiliev_coefficient(t.minus, 2, opts);
  const Rational lk = linkoid_lk(t.zero);

  SkeinReport r;
  r.kind = "knot";
  r.crossing = crossing;
  r.sign = t.sign;
  r.checks.push_back(relation("v0(K+) = 2", v0p, 2));
  r.checks.push_back(relation("v0(K-) = 2", v0m, 2));
  r.checks.push_back(relation("v1(K+) = v1(K-)", v1p, v1m));
  r.checks.push_back(relation("v2(K+) - v2(K-) = -6 lk(K0)", v2p - v2m, -6 * lk));
  return r;
}

SkeinReport verify_knotoid_skein(const Diagram& d, int crossing, const BracketOptions& opts) {
  require_single_component(d, "knotoid skein check");
  if (d.components()[0].closed) fail(ErrorKind::precondition, "knotoid skein check needs an open component");
  d.locate(crossing, true);
  const auto t = skein_triple(d, crossing);

  auto v = [&](const Diagram& x, unsigned k) { return vassiliev_coefficient(x, k, opts); };
  const Rational v0p = v(t.plus, 0), v0m = v(t.minus, 0), v0z = v(t.zero, 0);
  const Rational v1p = v(t.plus, 1), v1m = v(t.minus, 1), v1z = v(t.zero, 1);
  const Rational v2p = v(t.plus, 2), v2m = v(t.minus, 2);

  SkeinReport r;
  r.crossing = crossing;
  r.sign = t.sign;
  r.checks.push_back(relation("v0(K+) = 2", v0p, 2));
  r.checks.push_back(relation("v0(K-) = 2", v0m, 2));
  // Coefficients of x^1 and x^2 in the skein identity itself.
  r.checks.push_back(relation("v1(K+) - v1(K-) = v0(K0) - v0(K+) - v0(K-)", v1p - v1m, v0z - v0p - v0m));
  r.checks.push_back(relation("v2(K+) - v2(K-) = v1(K0) - v1(K+) - v1(K-)", v2p - v2m, v1z - v1p - v1m));

  if (endpoints_share_region(t.plus)) {
    r.kind = "knot-type knotoid";
    r.checks.push_back(relation("v1(K+) = v1(K-)", v1p, v1m));
    r.checks.push_back(relation("v2(K+) - v2(K-) = -6 lk(K0)", v2p - v2m, -6 * linkoid_lk(t.zero)));
    return r;
  }

  r.kind = "knotoid";
  r.r = sign_sum(t.plus, ascending_switches(t.plus));
  const auto sep = separating_switches(t.zero);
  r.l = sign_sum(t.zero, sep);
  const Diagram zero_s = switch_all(t.zero, sep);
  const Rational v0s = v(zero_s, 0), v1s = v(zero_s, 1);
  r.checks.push_back(relation("v0(K0) = v0(K0s)", v0z, v0s));
  r.checks.push_back(relation("v1(K0) = v1(K0s) + 2l - 2l v0(K0s)", v1z, v1s + 2 * r.l - 2 * r.l * v0s));
  r.checks.push_back(relation("v1(K+) - v1(K-) = r v0(K0s) - 4r", v1p - v1m, r.r * v0s - 4 * r.r));
  r.checks.push_back(relation("v2(K+) - v2(K-) = v1(K0s) - (2l+2r+1) v0(K0s) + 2l + 8r + 4", v2p - v2m,
                              v1s - (2 * r.l + 2 * r.r + 1) * v0s + 2 * r.l + 8 * r.r + 4));
  return r;
}

}  // namespace km
