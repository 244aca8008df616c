#include <doctest.h>

#include "ndtopt/rational.hpp"

using namespace ndtopt;

TEST_CASE("rational parsing accepts p/q, integers and exact decimals") {
  CHECK(parse_rational("1/3") == frac(1, 3));
  CHECK(parse_rational("2") == Rat(2));
  CHECK(parse_rational("0.25") == frac(1, 4));
  CHECK(parse_rational("-3/6") == frac(-1, 2));
  CHECK(parse_rational(" 5/3 ") == frac(5, 3));
  CHECK(parse_rational("1.") == Rat(1));
  CHECK(parse_rational(".5") == frac(1, 2));
  CHECK(parse_rational("0.333") == frac(333, 1000));  // decimals stay decimal, not 1/3
}

TEST_CASE("rational parsing rejects junk") {
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e3"), std::invalid_argument);
}

TEST_CASE("rational formatting is canonical") {
  CHECK(to_string(frac(6, 4)) == "3/2");
  CHECK(to_string(Rat(7)) == "7");
  CHECK(to_string(frac(-2, 6)) == "-1/3");
  CHECK(to_decimal_string(frac(1, 2)) == "0.5");
}

TEST_CASE("parse/format round-trip") {
  for (int num = -20; num <= 20; ++num) {
    for (int den = 1; den <= 12; ++den) {
      Rat v = frac(num, den);
      CHECK(parse_rational(to_string(v)) == v);
    }
  }
}
