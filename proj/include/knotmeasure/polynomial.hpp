#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "knotmeasure/diagram.hpp"

namespace km {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& r);

/// Integer Laurent polynomial in q. Zero coefficients are never stored.
class Laurent {
 public:
  Laurent() = default;
  static Laurent monomial(int exponent, const BigInt& coefficient = 1);
  /// q + 1/q, the value of a single loop or arc.
  static Laurent loop();

  const std::map<int, BigInt>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int min_exponent() const;
  int max_exponent() const;
  BigInt coefficient(int exponent) const;

  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator-() const;
  Laurent operator*(const Laurent& o) const;
  Laurent pow(unsigned n) const;
  /// Multiplies by q^k.
  Laurent shifted(int k) const;
  /// Substitutes q -> 1/q.
  Laurent inverted() const;
  bool operator==(const Laurent& o) const { return terms_ == o.terms_; }

  /// Exact quotient; throws not_divisible if the remainder is non-zero.
  Laurent divide_exact(const Laurent& divisor) const;

  /// (exponent, coefficient) pairs with exponents ascending.
  std::vector<std::pair<int, BigInt>> pairs() const;
  /// Human-readable form such as "q^-3 + q^-1 - q^5".
  std::string to_string() const;

 private:
  void add_term(int exponent, const BigInt& c);
  std::map<int, BigInt> terms_;
};

struct BracketOptions {
  int max_crossings = 24;
  unsigned threads = 1;
};

/// Sum over all smoothing states of (-q)^i (q + 1/q)^(loops + arcs).
Laurent bracket(const Diagram& d, const BracketOptions& opts = {});

/// q^(n+ - 2n-) (-1)^(n-) times the bracket.
Laurent enhanced_jones(const Diagram& d, const BracketOptions& opts = {});

/// Enhanced Jones divided by (q + 1/q); throws not_divisible otherwise.
Laurent classical_jones(const Diagram& d, const BracketOptions& opts = {});

/// Coefficient of x^k in J(e^{-x/2}) for J = sum c_m q^m:
/// (1/k!) sum c_m (-m/2)^k.
Rational vassiliev_from_polynomial(const Laurent& j, unsigned k);
Rational vassiliev_coefficient(const Diagram& d, unsigned k, const BracketOptions& opts = {});

}  // namespace km
