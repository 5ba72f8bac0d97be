#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace tempnet {

using Weight = std::int64_t;
using Rational = boost::rational<std::int64_t>;

// Accepts "N" or "N/D" with optional leading '-'. Throws InputError.
Rational parse_rational(std::string_view text);

// Lowest terms; integers are written without a denominator.
std::string to_string(const Rational& value);

// Decimal approximation for human output only.
std::string approx_string(const Rational& value, int digits = 4);

inline Rational floor_of(const Rational& value) {
  std::int64_t n = value.numerator();
  std::int64_t d = value.denominator();
  std::int64_t q = n / d;
  if (n % d != 0 && n < 0) --q;
  return Rational(q);
}

// Strictly positive rational N/D kept in lowest terms.
class Eps {
 public:
  Eps(std::int64_t numerator, std::int64_t denominator);
  explicit Eps(const Rational& value);

  static Eps parse(std::string_view text);

  std::int64_t numerator() const { return value_.numerator(); }
  std::int64_t denominator() const { return value_.denominator(); }
  const Rational& value() const { return value_; }
  std::string str() const { return to_string(value_); }

  friend bool operator==(const Eps& a, const Eps& b) { return a.value_ == b.value_; }
  friend bool operator<(const Eps& a, const Eps& b) { return a.value_ < b.value_; }

 private:
  Rational value_;
};

// Overflow-checked helpers for the integer solvers.
Weight checked_add(Weight a, Weight b);
Weight checked_mul(Weight a, Weight b);

}  // namespace tempnet
