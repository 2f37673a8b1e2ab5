#include "doctest.h"
#include "wpage/rational.hpp"

using wpage::Rational;

TEST_CASE("rational arithmetic normalizes") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
  CHECK(Rational(3, 4) * Rational(2, 3) == Rational(1, 2));
  CHECK(Rational(7) / Rational(2) == Rational(7, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK((-Rational(1, 3)).abs() == Rational(1, 3));
}

TEST_CASE("rational ordering is exact") {
  CHECK(Rational(1, 3) < Rational(34, 100));
  CHECK(Rational(2, 3) > Rational(66, 100));
  CHECK(Rational(1, 2) <= Rational(1, 2));
  CHECK(Rational(1000000, 1000001) < Rational(1));
}

TEST_CASE("rational parse") {
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("0.5") == Rational(1, 2));
  CHECK(Rational::parse("12.25") == Rational(49, 4));
  CHECK(Rational::parse("-2.5") == Rational(-5, 2));
  CHECK(Rational::parse("0.000001") == Rational(1, 1000000));
  CHECK_THROWS_AS((void)Rational::parse(""), std::invalid_argument);
}

TEST_CASE("rational text forms") {
  CHECK(Rational(7).str() == "7");
  CHECK(Rational(7, 2).str() == "7/2");
  CHECK(Rational(0).decimal() == "0");
  CHECK(Rational(2, 3).decimal() == "0.666666666667");
  CHECK(Rational(9).decimal() == "9.00000000000");
  CHECK(Rational(1, 1000000).decimal(6) == "0.00000100000");
  CHECK(Rational(-1, 2).decimal(3) == "-0.500");
  CHECK(Rational(99999999999951ll, 100000000000000ll).decimal() == "1.00000000000");
}

TEST_CASE("rational guards") {
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK_THROWS_AS(Rational(INT64_MAX, 1) * Rational(INT64_MAX, 1), std::overflow_error);
}
