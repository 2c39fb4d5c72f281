#include <catch2/catch_amalgamated.hpp>

#include "g2fk/field.hpp"

using g2fk::FieldScalar;

TEST_CASE("inverse examples") {
  CHECK(FieldScalar(1, 7).inv() == FieldScalar(1, 7));
  // Oracle: scan for the b with 3 b = 1 mod 7.
  int oracle = 0;
  for (int b = 1; b < 7; ++b)
    if (3 * b % 7 == 1) oracle = b;
  CHECK(FieldScalar(3, 7).inv().value() == static_cast<unsigned>(oracle));
  CHECK(oracle == 5);
  CHECK(FieldScalar(2, 5).pow(3).value() == 3u);
}

TEST_CASE("field axioms hold exhaustively") {
  for (unsigned p : {3u, 5u, 7u, 11u, 13u, 31u}) {
    for (unsigned a = 1; a < p; ++a) {
      const FieldScalar x(a, p);
      CHECK(x * x.inv() == FieldScalar(1, p));
      CHECK(x.pow(p - 1) == FieldScalar(1, p));
      CHECK(x / x == FieldScalar(1, p));
    }
    for (long long a = -40; a < 40; ++a)
      for (long long b = -5; b < 5; ++b) {
        const FieldScalar x(a, p), y(b, p);
        CHECK((x + y).value() == static_cast<unsigned>(((a + b) % (long long)p + p) % p));
        CHECK((x * y).value() == static_cast<unsigned>(((a * b) % (long long)p + p) % p));
        CHECK((x - y + y) == x);
        CHECK((-x + x).is_zero());
      }
  }
}

TEST_CASE("errors are explicit") {
  CHECK_THROWS_AS(FieldScalar(0, 7).inv(), g2fk::FieldError);
  CHECK_THROWS_AS(FieldScalar(1, 7) / FieldScalar(0, 7), g2fk::FieldError);
  CHECK_THROWS_AS(FieldScalar(1, 7) + FieldScalar(1, 5), g2fk::FieldError);
  CHECK_THROWS_AS(FieldScalar(1, 9), g2fk::FieldError);
  CHECK_THROWS_AS(FieldScalar(1, 37), g2fk::FieldError);
  CHECK_THROWS_WITH(g2fk::binom3(1, 3), "model requires p >= 5");
  CHECK_THROWS_AS(g2fk::binom3(2, 3), g2fk::FieldError);
  CHECK_NOTHROW(g2fk::binom3(0, 3));
}

TEST_CASE("binom3") {
  CHECK(g2fk::binom3(0, 5).value() == 1u);
  CHECK(g2fk::binom3(1, 7).value() == 3u);
  CHECK(g2fk::binom3(3, 5).value() == 1u);
  CHECK(g2fk::binom3(2, 11).value() == 3u);
}

TEST_CASE("symmetric representative") {
  CHECK(FieldScalar(6, 7).symmetric() == -1);
  CHECK(FieldScalar(3, 7).symmetric() == 3);
  CHECK(FieldScalar(4, 7).symmetric() == -3);
  g2fk::PrimeField f(7);
  for (int a = 1; a < 7; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  CHECK(f.symmetric(5) == -2);
}
