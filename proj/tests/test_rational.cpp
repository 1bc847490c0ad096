#include <doctest.h>

#include "robsynth/rational.hpp"

using namespace robsynth;

TEST_CASE("decimal and fraction parsing is exact") {
  CHECK(parse_rational("2.5") == Rational(5, 2));
  CHECK(parse_rational("-0.125") == Rational(-1, 8));
  CHECK(parse_rational("5/2") == Rational(5, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("2.5.1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("formatting picks decimals when they terminate") {
  CHECK(format_rational(Rational(5, 2)) == "2.5");
  CHECK(format_rational(Rational(1, 3)) == "1/3");
  CHECK(format_rational(Rational(-3, 8)) == "-0.375");
  CHECK(format_rational(Rational(12)) == "12");
  for (const char* s : {"0", "1.5", "0.001", "1/3", "22/7"}) {
    CHECK(parse_rational(format_rational(parse_rational(s))) == parse_rational(s));
  }
}

TEST_CASE("extended non-negative arithmetic") {
  const ExtNonNeg inf = ExtNonNeg::infinity();
  CHECK((inf + ExtNonNeg(3)).is_infinite());
  CHECK(ExtNonNeg(3) < inf);
  CHECK(ExtNonNeg(Rational(1, 2)) + ExtNonNeg(Rational(1, 3)) == ExtNonNeg(Rational(5, 6)));
  CHECK((Rational(0) * inf).is_infinite());
  CHECK(Rational(2) * ExtNonNeg(3) == ExtNonNeg(6));
  CHECK(to_string(inf) == "inf");
  CHECK(parse_ext("inf").is_infinite());
  CHECK(parse_ext("infinity").is_infinite());
  CHECK(parse_ext("0.5") == ExtNonNeg(Rational(1, 2)));
  CHECK_THROWS(ExtNonNeg(Rational(-1)));
  CHECK_THROWS_AS(inf.value(), std::logic_error);
}
