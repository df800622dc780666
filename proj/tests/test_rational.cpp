#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace almostid;

TEST_CASE("rationals are kept in lowest terms with positive denominator", "[rational]") {
  CHECK(ExactRational(6, 8).to_string() == "3/4");
  CHECK(ExactRational(3, -6).to_string() == "-1/2");
  CHECK(ExactRational(5).to_string() == "5/1");
  CHECK(ExactRational(0, 7).to_string() == "0/1");
  CHECK_THROWS_AS(ExactRational(1, 0), DomainError);
}

TEST_CASE("rational arithmetic", "[rational]") {
  const ExactRational a(1, 3);
  const ExactRational b(1, 6);
  CHECK(a + b == ExactRational(1, 2));
  CHECK(a - b == ExactRational(1, 6));
  CHECK(a * b == ExactRational(1, 18));
  CHECK(a / b == ExactRational(2));
  CHECK_THROWS_AS(a / ExactRational(0), DomainError);
}

TEST_CASE("parse is the inverse of to_string", "[rational][property]") {
  for (const auto& q : {ExactRational(3, 128), ExactRational(-7, 9), ExactRational(1), ExactRational(0)}) {
    CHECK(ExactRational::parse(q.to_string()) == q);
  }
  CHECK(ExactRational::parse("4") == ExactRational(4));
  CHECK(ExactRational::parse("10/4") == ExactRational(5, 2));
  CHECK_THROWS_AS(ExactRational::parse("1/0"), DomainError);
  CHECK_THROWS_AS(ExactRational::parse("x/2"), DomainError);
}

TEST_CASE("conversion to a real is correctly rounded", "[rational]") {
  const PrecisionContext ctx(40);
  CHECK(ExactRational(1, 3).to_real(ctx) == ctx.real(1L) / 3L);
  CHECK(ExactRational(-5, 8).to_real(ctx) == ctx.parse("-0.625"));
}

TEST_CASE("exact targets carry an optional factor of pi", "[rational]") {
  const PrecisionContext ctx(30);
  const ExactTarget t{ExactRational(3, 128), true};
  CHECK(t.to_string() == "3*pi/128");
  CHECK(t.value(ctx) == 3L * const_pi(ctx) / 128L);
  CHECK(ExactTarget{ExactRational(1), true}.to_string() == "pi");
  CHECK(ExactTarget{ExactRational(1, 6), false}.to_string() == "1/6");
  CHECK(ExactTarget{ExactRational(1), false}.to_string() == "1");
}
