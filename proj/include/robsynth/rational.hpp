#pragma once

#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace robsynth {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parses "3", "2.5", "-0.125" or "5/2" into an exact rational.
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Terminating decimal when the reduced denominator has only factors 2 and 5,
/// otherwise "p/q".
std::string format_rational(const Rational& value);

/// Non-negative rational extended with +infinity.
class ExtNonNeg {
public:
  ExtNonNeg() = default;
  ExtNonNeg(Rational value);  // NOLINT(google-explicit-constructor)
  ExtNonNeg(long long value) : ExtNonNeg(Rational(value)) {}  // NOLINT

  static ExtNonNeg infinity() {
    ExtNonNeg e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  bool is_zero() const { return !infinite_ && value_ == 0; }

  /// Throws std::logic_error when infinite.
  const Rational& value() const;

  friend ExtNonNeg operator+(const ExtNonNeg& a, const ExtNonNeg& b);
  /// Scaling by a non-negative rational; 0 * inf is inf.
  friend ExtNonNeg operator*(const Rational& c, const ExtNonNeg& a);

  friend bool operator==(const ExtNonNeg& a, const ExtNonNeg& b);
  friend std::strong_ordering operator<=>(const ExtNonNeg& a, const ExtNonNeg& b);

private:
  Rational value_{0};
  bool infinite_ = false;
};

/// "inf" or the format_rational form.
std::string to_string(const ExtNonNeg& v);
/// Accepts "inf"/"infinity" in addition to parse_rational syntax.
ExtNonNeg parse_ext(std::string_view text);

std::ostream& operator<<(std::ostream& os, const ExtNonNeg& v);

}  // namespace robsynth
