#include "tempnet/rational.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "tempnet/errors.hpp"

namespace tempnet {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last)
    throw InputError("not an exact rational: '" + std::string(whole) + "'");
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  std::int64_t num = parse_int(text.substr(0, slash), text);
  std::int64_t den = parse_int(text.substr(slash + 1), text);
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

std::string approx_string(const Rational& value, int digits) {
  double d = static_cast<double>(value.numerator()) / static_cast<double>(value.denominator());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, d);
  return buf;
}

Eps::Eps(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw InputError("epsilon has zero denominator");
  value_ = Rational(numerator, denominator);
  if (value_ <= 0) throw InputError("epsilon must be positive, got " + to_string(value_));
}

Eps::Eps(const Rational& value) : Eps(value.numerator(), value.denominator()) {}

Eps Eps::parse(std::string_view text) { return Eps(parse_rational(text)); }

Weight checked_add(Weight a, Weight b) {
  Weight out;
  if (__builtin_add_overflow(a, b, &out)) throw ResourceError("integer weight overflow");
  return out;
}

Weight checked_mul(Weight a, Weight b) {
  Weight out;
  if (__builtin_mul_overflow(a, b, &out)) throw ResourceError("integer weight overflow");
  return out;
}

}  // namespace tempnet
