#include "support.hpp"

#include <map>

#include "knotmeasure/error.hpp"
#include "knotmeasure/generators.hpp"

namespace oracle {

namespace {

// A strand segment between consecutive passages. Ends are numbered
// 2 * segment (tail) and 2 * segment + 1 (head).
struct Strands {
  int segments = 0;
  int free_circles = 0;
  std::vector<bool> open_end;  // true for leg and head ends
  // For each crossing: the end arriving at and leaving the over / under passage.
  struct Ends {
    int over_in, over_out, under_in, under_out;
  };
  std::vector<Ends> at;
  std::vector<int> sign;
};

Strands build(const km::Diagram& d) {
  Strands s;
  s.at.resize(d.crossing_count());
  for (const auto& x : d.crossings()) s.sign.push_back(x.sign);
  for (const auto& comp : d.components()) {
    const int n = static_cast<int>(comp.events.size());
    if (comp.closed && n == 0) {
      ++s.free_circles;
      continue;
    }
    const int first = s.segments;
    const int count = comp.closed ? n : n + 1;
    s.segments += count;
    s.open_end.resize(static_cast<std::size_t>(2 * s.segments), false);
    if (!comp.closed) {
      s.open_end[static_cast<std::size_t>(2 * first)] = true;
      s.open_end[static_cast<std::size_t>(2 * (first + n) + 1)] = true;
    }
    for (int k = 0; k < n; ++k) {
      // Closed: segment k leaves event k. Open: segment k arrives at event k.
      const int arriving = comp.closed ? first + (k - 1 + n) % n : first + k;
      const int leaving = comp.closed ? first + k : first + k + 1;
      const auto& e = comp.events[static_cast<std::size_t>(k)];
      auto& ends = s.at[static_cast<std::size_t>(e.crossing)];
      if (e.over) {
        ends.over_in = 2 * arriving + 1;
        ends.over_out = 2 * leaving;
      } else {
        ends.under_in = 2 * arriving + 1;
        ends.under_out = 2 * leaving;
      }
    }
  }
  return s;
}

// Number of circles and arcs after smoothing every crossing per `state`.
int count_pieces(const Strands& s, std::uint64_t state) {
  std::vector<int> partner(static_cast<std::size_t>(2 * s.segments), -1);
  auto link = [&](int a, int b) {
    partner[static_cast<std::size_t>(a)] = b;
    partner[static_cast<std::size_t>(b)] = a;
  };
  for (std::size_t x = 0; x < s.at.size(); ++x) {
    const bool b = (state >> x) & 1U;
    const auto& e = s.at[x];
    // The A-smoothing of a positive crossing (and the B-smoothing of a
    // negative one) reconnects the strands along their orientation.
    const bool oriented = (s.sign[x] > 0) != b;
    if (oriented) {
      link(e.over_in, e.under_out);
      link(e.under_in, e.over_out);
    } else {
      link(e.over_in, e.under_in);
      link(e.over_out, e.under_out);
    }
  }
  std::vector<bool> seen(static_cast<std::size_t>(s.segments), false);
  int pieces = 0;
  // Arcs first: walk from each unvisited open end to the other open end.
  for (int end = 0; end < 2 * s.segments; ++end) {
    if (!s.open_end[static_cast<std::size_t>(end)] || seen[static_cast<std::size_t>(end / 2)]) continue;
    ++pieces;
    int cur = end;
    while (true) {
      seen[static_cast<std::size_t>(cur / 2)] = true;
      const int other = cur ^ 1;  // the opposite end of the same segment
      if (s.open_end[static_cast<std::size_t>(other)]) break;
      cur = partner[static_cast<std::size_t>(other)];
    }
  }
  for (int seg = 0; seg < s.segments; ++seg) {
    if (seen[static_cast<std::size_t>(seg)]) continue;
    ++pieces;
    int cur = 2 * seg;
    do {
      seen[static_cast<std::size_t>(cur / 2)] = true;
      cur = partner[static_cast<std::size_t>(cur ^ 1)];
    } while (cur / 2 != seg);
  }
  return pieces + s.free_circles;
}

}  // namespace

km::Laurent bracket(const km::Diagram& d) {
  const Strands s = build(d);
  const std::size_t m = d.crossing_count();
  km::Laurent total;
  for (std::uint64_t state = 0; state < (std::uint64_t{1} << m); ++state) {
    const int b = __builtin_popcountll(state);
    const int pieces = count_pieces(s, state);
    for (std::uint64_t labels = 0; labels < (std::uint64_t{1} << pieces); ++labels) {
      const int plus = __builtin_popcountll(labels);
      const int exponent = b + plus - (pieces - plus);
      total += km::Laurent::monomial(exponent, b % 2 == 0 ? 1 : -1);
    }
  }
  return total;
}

km::Laurent enhanced_jones(const km::Diagram& d) {
  int plus = 0, minus = 0;
  for (const auto& x : d.crossings()) (x.sign > 0 ? plus : minus)++;
  const km::Laurent b = oracle::bracket(d);
  km::Laurent j;
  for (const auto& [e, c] : b.terms()) {
    j += km::Laurent::monomial(e + plus - 2 * minus, minus % 2 == 0 ? c : km::BigInt(-c));
  }
  return j;
}

km::Rational vassiliev(const km::Laurent& j, unsigned k) {
  // Series in x truncated after degree k; q = e^(-x/2), 1/q = e^(x/2).
  using Series = std::vector<km::Rational>;
  auto exp_series = [&](km::Rational a) {
    Series s(k + 1);
    km::Rational term = 1;
    for (unsigned n = 0; n <= k; ++n) {
      s[n] = term;
      term = term * a / km::Rational(n + 1);
    }
    return s;
  };
  auto mul = [&](const Series& a, const Series& b) {
    Series out(k + 1, km::Rational(0));
    for (unsigned i = 0; i <= k; ++i) {
      for (unsigned t = 0; i + t <= k; ++t) out[i + t] += a[i] * b[t];
    }
    return out;
  };
  const Series q = exp_series(km::Rational(-1, 2)), q_inv = exp_series(km::Rational(1, 2));
  km::Rational result = 0;
  for (const auto& [e, c] : j.terms()) {
    Series p(k + 1, km::Rational(0));
    p[0] = 1;
    for (int n = 0; n < std::abs(e); ++n) p = mul(p, e > 0 ? q : q_inv);
    result += km::Rational(c) * p[k];
  }
  return result;
}

long alternating_pair_sum(const km::Diagram& d) {
  const auto& events = d.components().at(0).events;
  const int n = static_cast<int>(events.size());
  long sum = 0;
  // Positions along the traversal: j4 < j3 < j2 < j1. Chord (j4, j2) and
  // chord (j3, j1) must each be a crossing.
  for (int j4 = 0; j4 < n; ++j4) {
    for (int j3 = j4 + 1; j3 < n; ++j3) {
      for (int j2 = j3 + 1; j2 < n; ++j2) {
        if (events[j4].crossing != events[j2].crossing) continue;
        for (int j1 = j2 + 1; j1 < n; ++j1) {
          if (events[j3].crossing != events[j1].crossing) continue;
          if (events[j1].over == events[j2].over) continue;
          sum += d.crossing(events[j4].crossing).sign * d.crossing(events[j3].crossing).sign;
        }
      }
    }
  }
  return sum;
}

km::Rational linking_number(const km::Diagram& d) {
  long s = 0;
  for (const auto& x : d.crossings()) {
    if (x.over_component != x.under_component) s += x.sign;
  }
  return km::Rational(s, 2);
}

}  // namespace oracle

namespace corpus {

std::vector<Entry> random_diagrams(std::size_t count, bool closed, std::size_t edges, int min_crossings,
                                   int max_crossings, std::uint64_t seed) {
  std::vector<Entry> out;
  for (std::uint64_t trial = 0; out.size() < count && trial < 100 * count; ++trial) {
    const km::PolygonalCurve curve = km::random_walk(edges, seed + trial, closed);
    const km::Direction dir = km::sample_direction(seed, trial);
    try {
      km::Diagram d = km::diagram_of(curve, dir);
      const int n = static_cast<int>(d.crossing_count());
      if (n >= min_crossings && n <= max_crossings) out.push_back({curve, dir, std::move(d)});
    } catch (const km::Error&) {
      // non-generic direction or self-intersecting walk
    }
  }
  return out;
}

}  // namespace corpus
