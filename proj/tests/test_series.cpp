#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace almostid;
using testing::close;
using testing::rel_close;

namespace {

// Naive two-sided sum over |k| <= K, written against the definition
// (m^{k/2} + m^{-k/2})^{-n} with exp, no folding.
BigReal naive_u(int n, long m, long K, const PrecisionContext& ctx) {
  const BigReal lm = ln(m, ctx);
  BigReal s = ctx.real(0L);
  for (long k = -K; k <= K; ++k) {
    const BigReal half = exp(lm * k / 2L, ctx);
    s += pow(half + 1L / half, -n, ctx);
  }
  return lm * s;
}

// n = 1 correction with cosh written out through exp.
BigReal naive_r1(long m, const PrecisionContext& ctx) {
  const BigReal pi = const_pi(ctx);
  const BigReal a = 2L * pi * pi / ln(m, ctx);
  BigReal s = ctx.real(0L);
  for (long k = 1; k <= 40; ++k) {
    const BigReal e = exp(a * k, ctx);
    s += 2L * pi / ((e + 1L / e) / 2L);
  }
  return s;
}

}  // namespace

TEST_CASE("targets follow t_n = (n-2)/(4(n-1)) t_{n-2}", "[series]") {
  CHECK(target(1) == ExactTarget{ExactRational(1), true});
  CHECK(target(2) == ExactTarget{ExactRational(1), false});
  CHECK(target(3) == ExactTarget{ExactRational(1, 8), true});
  CHECK(target(4) == ExactTarget{ExactRational(1, 6), false});
  CHECK(target(5) == ExactTarget{ExactRational(3, 128), true});
  CHECK(target(6) == ExactTarget{ExactRational(1, 30), false});
  CHECK(target(8) == ExactTarget{ExactRational(1, 140), false});
  CHECK_THROWS_AS(target(0), DomainError);
}

TEST_CASE("u_direct matches a naive two-sided sum", "[series]") {
  const PrecisionContext ctx(30);
  for (long m : {2L, 3L, 9L}) {
    for (int n : {1, 2, 5}) {
      const SeriesValue u = u_direct(n, m, ctx);
      INFO("n=" << n << " m=" << m);
      CHECK(close(u.value, naive_u(n, m, 400, ctx), 40, ctx));
      CHECK(u.tail_bound < ctx.pow10(-40));
      CHECK(u.terms_used > 1);
    }
  }
}

TEST_CASE("u_direct is close to its target", "[series]") {
  const PrecisionContext ctx(30);
  // u_1(2) = pi + 0.53e-11
  const BigReal d1 = u_direct(1, 2, ctx).value - const_pi(ctx);
  CHECK(d1 > 0L);
  CHECK(d1 < ctx.pow10(-11));
  const BigReal d2 = u_direct(2, 2, ctx).value - 1L;
  CHECK(d2 > 0L);
  CHECK(d2 < ctx.pow10(-10));
}

TEST_CASE("hyperbolic coefficients against literal transcriptions", "[series]") {
  const PrecisionContext ctx(40);
  const BigReal pi = const_pi(ctx);
  const long m = 3;
  const BigReal L = ln(m, ctx);
  for (long k : {1L, 2L, 5L}) {
    const BigReal w = 4L * pi * pi * (k * k) / (L * L);
    // empty product
    CHECK(close(coeff_c(1, k, m, ctx), ctx.real(1L), 45, ctx));
    CHECK(close(coeff_b(1, k, m, ctx), 2L * pi * k / L, 45, ctx));
    // l = 2
    CHECK(close(coeff_c(2, k, m, ctx), w / 2L, 45, ctx));
    CHECK(close(coeff_b(2, k, m, ctx), 2L * pi * k * (w + ctx.ratio(1, 4)) / (L * 6L), 45, ctx));
    // l = 3
    CHECK(close(coeff_c(3, k, m, ctx), w * (w + 1L) / 24L, 45, ctx));
    CHECK(close(coeff_b(3, k, m, ctx),
                2L * pi * k * (w + ctx.ratio(1, 4)) * (w + ctx.ratio(9, 4)) / (L * 120L), 45, ctx));
  }
  CHECK_THROWS_AS(coeff_c(0, 1, 2, ctx), DomainError);
  CHECK_THROWS_AS(coeff_b(1, 0, 2, ctx), DomainError);
}

TEST_CASE("r_1 against an independent cosh transcription", "[series]") {
  const PrecisionContext ctx(40);
  for (long m : {2L, 4L, 9L}) {
    CHECK(close(r_correction(1, m, ctx).value, naive_r1(m, ctx), 50, ctx));
  }
}

TEST_CASE("printed correction values at m = 2", "[series]") {
  const PrecisionContext ctx(30);
  CHECK(rel_close(r_correction(1, 2, ctx).value, ctx.parse("0.538914478e-11"), 6, ctx));
  CHECK(rel_close(r_correction(2, 2, ctx).value, ctx.parse("0.4885108992e-10"), 6, ctx));
  CHECK(rel_close(r_correction(10, 2, ctx).value, ctx.parse("0.7227399e-8"), 6, ctx));
}

TEST_CASE("correction series are positive and bounded", "[series]") {
  const PrecisionContext ctx(30);
  for (int n = 1; n <= 12; ++n) {
    const SeriesValue r = r_correction(n, 2, ctx);
    CHECK(r.value > 0L);
    CHECK(r.tail_bound < ctx.pow10(-40) * r.value);
  }
}

TEST_CASE("identity report for n = 4", "[series]") {
  const PrecisionContext ctx(30);
  const IdentityReport rep = verify_identity(4, 2, ctx);
  CHECK(rep.target.to_string() == "1/6");
  CHECK(rep.delta.to_decimal(2) == "0.68e-9");
  CHECK(abs(rep.residual) < ctx.pow10(-30));
  CHECK(rep.passed);
}

TEST_CASE("recurrence holds within tail bounds", "[series]") {
  const PrecisionContext ctx(40);
  for (long m : {2L, 3L}) {
    for (int n : {3, 4, 7, 12}) {
      const RecurrenceCheck c = check_recurrence(n, m, ctx);
      INFO("n=" << n << " m=" << m << " residual=" << c.residual.to_decimal(3));
      CHECK(c.within());
    }
  }
  CHECK_THROWS_AS(check_recurrence(2, 2, ctx), DomainError);
}

TEST_CASE("loose tolerance with strict policy fails", "[series]") {
  const PrecisionContext ctx = PrecisionContext(30).with_tail_tol(PrecisionContext(30).parse("1e-5"));
  const IdentityReport strict = verify_identity(1, 2, ctx, VerifyPolicy{false});
  CHECK_FALSE(strict.passed);
  const IdentityReport credited = verify_identity(1, 2, ctx);
  CHECK(credited.passed);
}

TEST_CASE("precondition violations", "[series]") {
  const PrecisionContext ctx(20);
  CHECK_THROWS_AS(u_direct(0, 2, ctx), DomainError);
  CHECK_THROWS_AS(u_direct(1, 1, ctx), DomainError);
  CHECK_THROWS_AS(r_correction(0, 2, ctx), DomainError);
  CHECK_THROWS_AS(verify_identity(3, 0, ctx), DomainError);
}

TEST_CASE("scan sorts, dedupes and records errors per cell", "[series]") {
  const PrecisionContext ctx(25);
  const auto cells = scan({3, 1, 3, 0}, {4, 2}, ctx);
  REQUIRE(cells.size() == 6);
  CHECK(cells[0].base_m == 2);
  CHECK(cells[0].n == 0);
  CHECK_FALSE(cells[0].report);
  CHECK(cells[0].error.find("n must be >= 1") != std::string::npos);
  CHECK(cells[1].n == 1);
  CHECK(cells[2].n == 3);
  CHECK(cells[5].base_m == 4);
  for (std::size_t i = 1; i < cells.size(); ++i) {
    if (cells[i].n == 0) continue;
    REQUIRE(cells[i].report);
    CHECK(cells[i].report->passed);
  }
}

TEST_CASE("scan is deterministic across parallel and serial runs", "[series][property]") {
  const PrecisionContext ctx(30);
  const auto a = scan({1, 2, 3, 4, 5}, {2, 3}, ctx, {}, true);
  const auto b = scan({1, 2, 3, 4, 5}, {2, 3}, ctx, {}, false);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].report);
    REQUIRE(b[i].report);
    CHECK(*a[i].report == *b[i].report);
  }
}

TEST_CASE("precision scaling of series results", "[series][property]") {
  for (int d : {30, 50}) {
    const PrecisionContext lo(d);
    const PrecisionContext hi = lo.widened(10);
    for (int n : {1, 2, 5, 10}) {
      CHECK(rel_close(hi.adopt(u_direct(n, 3, lo).value), u_direct(n, 3, hi).value, d, hi));
      CHECK(rel_close(hi.adopt(r_correction(n, 3, lo).value), r_correction(n, 3, hi).value, d, hi));
    }
  }
}
