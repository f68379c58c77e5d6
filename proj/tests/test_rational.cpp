#include "outer/rational.hpp"

#include <doctest.h>

#include <cmath>

using namespace outer;

TEST_CASE("rational parse and format round trip") {
  CHECK(format_rational(parse_rational("1/3")) == "1/3");
  CHECK(format_rational(parse_rational("-3/6")) == "-1/2");
  CHECK(format_rational(parse_rational("7")) == "7");
  CHECK(format_rational(parse_rational("0")) == "0");
  CHECK(parse_rational("2/4") == Rat(1, 2));
  CHECK_THROWS(parse_rational(""));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
}

TEST_CASE("log of huge integers stays accurate") {
  BigInt big = boost::multiprecision::pow(BigInt(2), 10000);
  CHECK(log_bigint(big) == doctest::Approx(10000 * std::log(2.0)).epsilon(1e-12));
  Rat tiny = Rat(1) / Rat(big);
  CHECK(log_rational(tiny) == doctest::Approx(-10000 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("log combo signs are exact") {
  LogCombo zero;
  CHECK(zero.sign() == 0);

  LogCombo pos;
  pos.add(Rat(3), 1);
  pos.add(Rat(2), -1);
  CHECK(pos.sign() == 1);

  // log(1024) - 10 log 2 is exactly zero; a float estimate cannot decide it
  LogCombo pow2;
  pow2.add(Rat(1024), 1);
  pow2.add(Rat(2), -10);
  CHECK(pow2.sign() == 0);

  LogCombo tight;
  tight.add(Rat(1024), 1);
  tight.add(Rat(2), -10);
  tight.add(Rat(1000000007, 1000000006), 1);
  CHECK(tight.sign() == 1);

  LogCombo cancel;
  cancel.add(Rat(5, 7), 3);
  cancel.add(Rat(5, 7), -3);
  CHECK(cancel.sign() == 0);
  CHECK(cancel.term_count() == 0);
}

TEST_CASE("rat sum avoids per-step normalization but agrees") {
  RatSum sum;
  Rat direct = 0;
  for (int i = 1; i <= 40; ++i) {
    Rat term(i, 2 * i + 1);
    sum.add(term);
    direct += term;
  }
  sum.subtract(Rat(1, 3));
  direct -= Rat(1, 3);
  sum.add_fraction(BigInt(5), BigInt(8));
  direct += Rat(5, 8);
  CHECK(sum.value() == direct);
}
