#include "knotmeasure/polynomial.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <sstream>
#include <thread>

#include "knotmeasure/error.hpp"

namespace km {

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Laurent Laurent::monomial(int exponent, const BigInt& coefficient) {
  Laurent p;
  p.add_term(exponent, coefficient);
  return p;
}

Laurent Laurent::loop() { return monomial(1) + monomial(-1); }

void Laurent::add_term(int exponent, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int Laurent::min_exponent() const {
  if (terms_.empty()) fail(ErrorKind::precondition, "zero polynomial has no exponents");
  return terms_.begin()->first;
}

int Laurent::max_exponent() const {
  if (terms_.empty()) fail(ErrorKind::precondition, "zero polynomial has no exponents");
  return terms_.rbegin()->first;
}

BigInt Laurent::coefficient(int exponent) const {
  const auto it = terms_.find(exponent);
  return it == terms_.end() ? BigInt(0) : it->second;
}

Laurent& Laurent::operator+=(const Laurent& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Laurent Laurent::operator+(const Laurent& o) const {
  Laurent r = *this;
  r += o;
  return r;
}

Laurent Laurent::operator-(const Laurent& o) const {
  Laurent r = *this;
  r -= o;
  return r;
}

Laurent Laurent::operator-() const {
  Laurent r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Laurent Laurent::operator*(const Laurent& o) const {
  Laurent r;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) r.add_term(e1 + e2, c1 * c2);
  }
  return r;
}

Laurent Laurent::pow(unsigned n) const {
  Laurent result = monomial(0);
  Laurent base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

Laurent Laurent::shifted(int k) const {
  Laurent r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
  return r;
}

Laurent Laurent::inverted() const {
  Laurent r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
  return r;
}

Laurent Laurent::divide_exact(const Laurent& divisor) const {
  if (divisor.is_zero()) fail(ErrorKind::input, "division by the zero polynomial");
  Laurent quotient;
  Laurent rem = *this;
  const int dmax = divisor.max_exponent();
  const int dspan = dmax - divisor.min_exponent();
  const BigInt& lead = divisor.terms_.rbegin()->second;
  while (!rem.is_zero() && rem.max_exponent() - rem.min_exponent() >= dspan) {
    const BigInt& top = rem.terms_.rbegin()->second;
    if (top % lead != 0) break;
    const Laurent step = monomial(rem.max_exponent() - dmax, top / lead);
    quotient += step;
    rem -= step * divisor;
  }
  if (!rem.is_zero()) {
    fail(ErrorKind::not_divisible, to_string() + " is not divisible by " + divisor.to_string());
  }
  return quotient;
}

std::vector<std::pair<int, BigInt>> Laurent::pairs() const {
  return {terms_.begin(), terms_.end()};
}

std::string Laurent::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream s;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) s << '-';
    } else {
      s << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      s << mag.str();
      continue;
    }
    if (mag != 1) s << mag.str() << '*';
    s << 'q';
    if (e != 1) s << '^' << e;
  }
  return s.str();
}

namespace {

struct StateTopology {
  int edge_count = 0;
  int free_circles = 0;
  // Per crossing: edges ending at / leaving the over and under passages.
  std::vector<std::array<int, 4>> ends;  // over_in, over_out, under_in, under_out
  std::vector<int> signs;
};

StateTopology state_topology(const Diagram& d) {
  StateTopology t;
  std::vector<std::vector<int>> in_edge(d.component_count()), out_edge(d.component_count());
  for (std::size_t c = 0; c < d.component_count(); ++c) {
    const auto& comp = d.components()[c];
    const int n = static_cast<int>(comp.events.size());
    const int base = t.edge_count;
    if (comp.closed) {
      if (n == 0) {
        ++t.free_circles;
        continue;
      }
      t.edge_count += n;
      for (int k = 0; k < n; ++k) {
        in_edge[c].push_back(base + (k - 1 + n) % n);
        out_edge[c].push_back(base + k);
      }
    } else {
      t.edge_count += n + 1;
      for (int k = 0; k < n; ++k) {
        in_edge[c].push_back(base + k);
        out_edge[c].push_back(base + k + 1);
      }
    }
  }
  t.ends.resize(d.crossing_count());
  for (std::size_t x = 0; x < d.crossing_count(); ++x) {
    const auto [oc, ok] = d.locate(static_cast<int>(x), true);
    const auto [uc, uk] = d.locate(static_cast<int>(x), false);
    t.ends[x] = {in_edge[oc][ok], out_edge[oc][ok], in_edge[uc][uk], out_edge[uc][uk]};
    t.signs.push_back(d.crossing(static_cast<int>(x)).sign);
  }
  return t;
}

// counts[i * stride + L] = number of states with i B-smoothings and L loops+arcs.
void count_states(const StateTopology& t, std::uint64_t begin, std::uint64_t end, int stride,
                  std::vector<std::int64_t>& counts) {
  const int m = static_cast<int>(t.ends.size());
  std::array<int, 64> parent{};
  auto find = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (std::uint64_t state = begin; state < end; ++state) {
    for (int e = 0; e < t.edge_count; ++e) parent[e] = e;
    int pieces = t.edge_count;
    auto join = [&](int a, int b) {
      a = find(a);
      b = find(b);
      if (a != b) {
        parent[a] = b;
        --pieces;
      }
    };
    int b_count = 0;
    for (int x = 0; x < m; ++x) {
      const bool b_smoothing = (state >> x) & 1U;
      b_count += b_smoothing ? 1 : 0;
      const auto& [oi, oo, ui, uo] = t.ends[x];
      // A-smoothing of a positive crossing follows the orientation.
      const bool oriented = b_smoothing == (t.signs[x] < 0);
      if (oriented) {
        join(oi, uo);
        join(ui, oo);
      } else {
        join(oi, ui);
        join(oo, uo);
      }
    }
    ++counts[static_cast<std::size_t>(b_count * stride + pieces + t.free_circles)];
  }
}

}  // namespace

Laurent bracket(const Diagram& d, const BracketOptions& opts) {
  const int m = static_cast<int>(d.crossing_count());
  if (m > opts.max_crossings || m > 40) {
    fail(ErrorKind::resource, "diagram has " + std::to_string(m) + " crossings; the state-sum budget is " +
                                  std::to_string(std::min(opts.max_crossings, 40)));
  }
  const StateTopology t = state_topology(d);
  if (t.edge_count > 64) fail(ErrorKind::resource, "too many strand segments for the state sum");
  const int stride = t.edge_count + t.free_circles + 1;
  const std::uint64_t total = std::uint64_t{1} << m;

  unsigned threads = std::max(1U, opts.threads);
  if (total < (1U << 12)) threads = 1;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));
  std::vector<std::vector<std::int64_t>> partial(threads,
                                                 std::vector<std::int64_t>(static_cast<std::size_t>((m + 1) * stride)));
  if (threads == 1) {
    count_states(t, 0, total, stride, partial[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      const std::uint64_t begin = total * w / threads, end = total * (w + 1) / threads;
      pool.emplace_back([&, w, begin, end] { count_states(t, begin, end, stride, partial[w]); });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<std::int64_t> counts(partial[0].size());
  for (const auto& p : partial) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += p[i];
  }

  Laurent result;
  const Laurent loop = Laurent::loop();
  Laurent loop_power = Laurent::monomial(0);
  for (int pieces = 0; pieces < stride; ++pieces) {
    Laurent by_smoothing;
    for (int i = 0; i <= m; ++i) {
      const std::int64_t c = counts[static_cast<std::size_t>(i * stride + pieces)];
      if (c != 0) by_smoothing += Laurent::monomial(i, (i % 2 == 0) ? BigInt(c) : BigInt(-c));
    }
    if (!by_smoothing.is_zero()) result += by_smoothing * loop_power;
    loop_power = loop_power * loop;
  }
  return result;
}

Laurent enhanced_jones(const Diagram& d, const BracketOptions& opts) {
  const auto counts = crossing_counts(d);
  Laurent j = bracket(d, opts).shifted(counts.n_plus - 2 * counts.n_minus);
  return (counts.n_minus % 2 == 0) ? j : -j;
}

Laurent classical_jones(const Diagram& d, const BracketOptions& opts) {
  return enhanced_jones(d, opts).divide_exact(Laurent::loop());
}

Rational vassiliev_from_polynomial(const Laurent& j, unsigned k) {
  BigInt moment = 0;
  for (const auto& [m, c] : j.terms()) moment += c * boost::multiprecision::pow(BigInt(m), k);
  BigInt denom = 1;
  for (unsigned i = 2; i <= k; ++i) denom *= i;
  denom <<= k;
  Rational v(moment, denom);
  return (k % 2 == 0) ? v : Rational(-v);
}

Rational vassiliev_coefficient(const Diagram& d, unsigned k, const BracketOptions& opts) {
  return vassiliev_from_polynomial(enhanced_jones(d, opts), k);
}

}  // namespace km
