#include <doctest.h>

#include "factpow/dyadic.hpp"

using namespace factpow;

TEST_CASE("canonical form") {
  CHECK(Dyadic(mpz_class(12), 0) == Dyadic(mpz_class(3), 2));
  CHECK(Dyadic(mpz_class(12), 0).mantissa() == 3);
  CHECK(Dyadic(mpz_class(12), 0).exponent() == 2);
  CHECK(Dyadic(mpz_class(0), 17).exponent() == 0);
  CHECK(Dyadic() == Dyadic(0));
}

TEST_CASE("arithmetic") {
  const Dyadic half = Dyadic::power_of_two(-1);
  const Dyadic quarter = Dyadic::power_of_two(-2);
  CHECK(half + quarter == Dyadic(mpz_class(3), -2));
  CHECK(half - quarter == quarter);
  CHECK(half * half == quarter);
  CHECK(Dyadic(mpz_class(3), -2) * mpz_class(4) == Dyadic(3));
  CHECK(-half + half == Dyadic());
  CHECK(quarter < half);
  CHECK(-half < quarter);
  CHECK(Dyadic(5) > Dyadic(mpz_class(9), -1));
  CHECK(min(half, quarter) == quarter);
  CHECK(max(half, quarter) == half);
}

TEST_CASE("floor, ceil, frac") {
  const Dyadic x(mpz_class(-5), -1);  // -2.5
  CHECK(x.floor() == -3);
  CHECK(x.ceil() == -2);
  CHECK(x.frac() == Dyadic::power_of_two(-1));
  CHECK(Dyadic(7).floor() == 7);
  CHECK(Dyadic(7).ceil() == 7);
  CHECK(Dyadic(mpz_class(7), -2).floor() == 1);
  CHECK(Dyadic(mpz_class(7), -2).ceil() == 2);
}

TEST_CASE("directed decimal rendering") {
  const Dyadic third_ish(mpz_class(1), -3);  // 0.125
  CHECK(third_ish.to_decimal(2, Rounding::Down) == "0.12");
  CHECK(third_ish.to_decimal(2, Rounding::Up) == "0.13");
  CHECK(third_ish.to_decimal(3, Rounding::Down) == "0.125");
  CHECK((-third_ish).to_decimal(2, Rounding::Down) == "-0.13");
  CHECK((-third_ish).to_decimal(2, Rounding::Up) == "-0.12");
  CHECK(Dyadic(3).to_decimal(2, Rounding::Up) == "3.00");
  CHECK(Dyadic(mpz_class(5), -1).to_double() == doctest::Approx(2.5));
}
