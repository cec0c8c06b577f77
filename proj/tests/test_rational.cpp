#include <doctest.h>

#include "oscot/rational.hpp"
#include "test_support.hpp"

using namespace oscot;

TEST_CASE("parse_rat handles fractions, integers and finite decimals") {
  CHECK(parse_rat("2/4") == Rat(1, 2));
  CHECK(parse_rat("-3/9") == Rat(-1, 3));
  CHECK(parse_rat("7") == Rat(7));
  CHECK(parse_rat("-12") == Rat(-12));
  CHECK(parse_rat("0.25") == Rat(1, 4));
  CHECK(parse_rat("-1.25") == Rat(-5, 4));
  CHECK(parse_rat("1.050") == Rat(21, 20));
  CHECK(parse_rat(".5") == Rat(1, 2));
}

TEST_CASE("parse_rat rejects malformed text") {
  for (const char* bad : {"", "1/0", "1/2/3", "a", "1.2.3", "2.", "1/ 2", "--3"})
    CHECK_THROWS_AS(parse_rat(bad), ParseError);
}

TEST_CASE("to_string round-trips through parse_rat") {
  testing::Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    Rat x = testing::rand_rat(rng, 1000, -50, 50);
    CHECK(parse_rat(to_string(x)) == x);
  }
}

TEST_CASE("canonical form: reduced, positive denominator") {
  Rat x = make_rat(BigInt(-6), BigInt(-8));
  CHECK(numerator(x) == 3);
  CHECK(denominator(x) == 4);
  CHECK(to_string(make_rat(BigInt(10), BigInt(-4))) == "-5/2");
  CHECK(to_string(Rat(4, 2)) == "2");
  CHECK(parse_rat("-10/-4") == Rat(5, 2));
  CHECK_THROWS_AS(make_rat(BigInt(1), BigInt(0)), DomainError);
}

TEST_CASE("rat_floor") {
  CHECK(rat_floor(Rat(7, 2)) == 3);
  CHECK(rat_floor(Rat(-7, 2)) == -4);
  CHECK(rat_floor(Rat(6)) == 6);
  CHECK(rat_floor(Rat(-6)) == -6);
  CHECK(rat_floor(Rat(0)) == 0);
}
