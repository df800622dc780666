#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace almostid;
using testing::close;
using testing::rel_close;

namespace {

BigReal gamma_fn(const BigReal& x, const PrecisionContext& ctx) {
  BigReal r = ctx.real(0L);
  mpfr_gamma(r.get(), x.get(), MPFR_RNDN);
  return r;
}

// B(a, b) through the Gamma function.
BigReal beta(const BigReal& a, const BigReal& b, const PrecisionContext& ctx) {
  return gamma_fn(a, ctx) * gamma_fn(b, ctx) / gamma_fn(a + b, ctx);
}

// Beta-integral oracles, independent of the closed forms in the library:
//   int x^{a-1} (1+x)^{-N} dx = B(a, N-a)
//   g1: integrate by parts, g1' = -1/(sqrt x (1+x))  ->  B(s+1/2, 1/2-s)/s
//   g2: B(s, 1-s)
//   f_n = x^{(n-2)/2} (1-x) (1+x)^{-(n-1)}  ->  B(a, N-a) - B(a+1, N-a-1)
BigReal beta_oracle(const MellinFunction& fn, const BigReal& s, const PrecisionContext& ctx) {
  const BigReal half = ctx.ratio(1, 2);
  switch (fn.kind()) {
    case MellinKind::g1: return beta(s + half, half - s, ctx) / s;
    case MellinKind::g2: return beta(s, 1L - s, ctx);
    case MellinKind::fn: break;
  }
  const long N = fn.n() - 1;
  const BigReal a = s + ctx.ratio(fn.n() - 2, 2);
  return beta(a, N - a, ctx) - beta(a + 1L, (N - 1) - a, ctx);
}

// G_n by the textbook form of g_1, -2(arctan sqrt x - pi/2), summed far past
// the point where terms drop below 10^-digits.
BigReal naive_G(int n, const BigReal& x, long terms, const PrecisionContext& ctx) {
  const BigReal pi = const_pi(ctx);
  BigReal s = ctx.real(0L);
  BigReal y = x;
  for (long k = 1; k <= terms; ++k) {
    y = y * 2L;
    s += n == 1 ? -2L * (arctan(sqrt(y, ctx), ctx) - pi / 2L) : 1L / (1L + y);
  }
  return s;
}

}  // namespace

TEST_CASE("function ids parse and print", "[mellin]") {
  CHECK(MellinFunction::parse("g1") == MellinFunction::g1());
  CHECK(MellinFunction::parse("g2") == MellinFunction::g2());
  CHECK(MellinFunction::parse("fn(5)") == MellinFunction::f(5));
  CHECK(MellinFunction::parse("fn7") == MellinFunction::f(7));
  CHECK(MellinFunction::parse("f3") == MellinFunction::f(3));
  CHECK(MellinFunction::f(4).id() == "fn(4)");
  CHECK_THROWS_AS(MellinFunction::parse("g3"), DomainError);
  CHECK_THROWS_AS(MellinFunction::parse("fn(2)"), DomainError);
  CHECK_THROWS_AS(MellinFunction::parse("fn()"), DomainError);
}

TEST_CASE("closed forms at s = 1/4", "[mellin]") {
  const PrecisionContext ctx(40);
  const BigReal pi = const_pi(ctx);
  const BigReal rt2 = sqrt(ctx.real(2L), ctx);
  const BigReal s = ctx.ratio(1, 4);
  CHECK(close(mellin_closed(MellinFunction::g1(), s, ctx), 4L * rt2 * pi, 50, ctx));
  CHECK(close(mellin_closed(MellinFunction::g2(), s, ctx), rt2 * pi, 50, ctx));
  CHECK(close(mellin_closed(MellinFunction::f(3), s, ctx), -pi / rt2, 50, ctx));
}

TEST_CASE("closed forms against Beta-integral oracles", "[mellin]") {
  const PrecisionContext ctx(40);
  for (const char* sv : {"0.125", "0.25", "0.375", "0.01", "0.49"}) {
    const BigReal s = ctx.parse(sv);
    for (const char* id : {"g1", "g2", "fn(3)", "fn(4)", "fn(5)", "fn(6)", "fn(7)", "fn(10)"}) {
      const MellinFunction fn = MellinFunction::parse(id);
      INFO(id << " s=" << sv);
      CHECK(close(mellin_closed(fn, s, ctx), beta_oracle(fn, s, ctx), 45, ctx));
    }
  }
}

TEST_CASE("s outside the strip is rejected", "[mellin]") {
  const PrecisionContext ctx(20);
  for (const char* sv : {"0", "0.5", "-0.1", "0.75"}) {
    CHECK_THROWS_AS(mellin_closed(MellinFunction::g1(), ctx.parse(sv), ctx), DomainError);
    CHECK_THROWS_AS(mellin_numeric(MellinFunction::g2(), ctx.parse(sv), ctx), DomainError);
  }
}

TEST_CASE("quadrature agrees with closed forms", "[mellin]") {
  const PrecisionContext ctx(30);
  for (const char* id : {"g1", "g2", "fn(3)", "fn(4)", "fn(7)"}) {
    for (const char* sv : {"0.125", "0.375"}) {
      const MellinCheck c = mellin_check(MellinFunction::parse(id), ctx.parse(sv), ctx);
      INFO(id << " s=" << sv << " err=" << c.abs_err.to_decimal(3));
      CHECK(c.passed);
      CHECK(c.abs_err < ctx.pow10(-28));
    }
  }
}

TEST_CASE("reflection integral for g2", "[mellin]") {
  // int x^{s-1}/(1+x) dx = pi / sin(pi s), by quadrature
  const PrecisionContext ctx(30);
  const BigReal s = ctx.parse("0.3");
  const BigReal expected = const_pi(ctx) / sin(const_pi(ctx) * s, ctx);
  CHECK(close(mellin_numeric(MellinFunction::g2(), s, ctx), expected, 28, ctx));
}

TEST_CASE("harmonic sums factor through 1/(2^s - 1)", "[mellin]") {
  const PrecisionContext ctx(25);
  for (auto fn : {MellinFunction::g1(), MellinFunction::g2()}) {
    const MellinCheck c = harmonic_factor_check(fn, ctx.ratio(1, 4), ctx);
    INFO(fn.id() << " err=" << c.abs_err.to_decimal(3));
    CHECK(c.passed);
  }
  const MellinCheck c = harmonic_factor_check(MellinFunction::f(4), ctx.ratio(1, 8), ctx);
  CHECK(c.passed);
}

TEST_CASE("f_n is antisymmetric under x -> 1/x", "[mellin][property]") {
  const PrecisionContext ctx(30);
  for (int n = 3; n <= 8; ++n) {
    const MellinFunction fn = MellinFunction::f(n);
    for (const char* xv : {"0.01", "0.3", "1", "2.5", "77"}) {
      const BigReal x = ctx.parse(xv);
      const BigReal a = evaluate(fn, x, ctx);
      const BigReal b = evaluate(fn, 1L / x, ctx);
      INFO("n=" << n << " x=" << xv);
      CHECK(abs(a + b) <= ctx.pow10(-40));
    }
  }
}

TEST_CASE("pointwise evaluation", "[mellin]") {
  const PrecisionContext ctx(30);
  const BigReal pi = const_pi(ctx);
  CHECK(close(evaluate(MellinFunction::g1(), ctx.real(1L), ctx), pi / 2L, 40, ctx));
  CHECK(close(evaluate(MellinFunction::g1(), ctx.real(3L), ctx), pi / 3L, 40, ctx));
  CHECK(evaluate(MellinFunction::g2(), ctx.real(3L), ctx) == ctx.ratio(1, 4));
  CHECK(evaluate(MellinFunction::f(5), ctx.real(1L), ctx).is_zero());
  CHECK_THROWS_AS(evaluate(MellinFunction::g2(), ctx.real(0L), ctx), DomainError);
}

TEST_CASE("direct harmonic sums", "[mellin]") {
  const PrecisionContext ctx(30);
  // every term below 2^-k 10^-6
  const SeriesValue big = g_direct(2, ctx.parse("1e6"), ctx);
  CHECK(big.value < ctx.parse("2e-6"));
  CHECK(big.value > 0L);
  for (const char* xv : {"0.3", "1"}) {
    const BigReal x = ctx.parse(xv);
    CHECK(close(g_direct(2, x, ctx).value, naive_G(2, x, 200, ctx), 40, ctx));
    // n = 1 terms decay like 2^{-k/2}: 330 terms reach ~10^-50
    CHECK(close(g_direct(1, x, ctx).value, naive_G(1, x, 330, ctx), 40, ctx));
  }
  CHECK_THROWS_AS(g_direct(3, ctx.real(1L), ctx), DomainError);
  CHECK_THROWS_AS(g_direct(1, ctx.real(0L), ctx), DomainError);
}

TEST_CASE("direct sums agree with the residue expansion", "[mellin]") {
  const PrecisionContext ctx(30);
  for (int n : {1, 2}) {
    for (const char* xv : {"0.1", "0.2", "0.3", "0.45", "0.25", "0.001"}) {
      const DualCheck d = dual_check(n, ctx.parse(xv), ctx);
      INFO("n=" << n << " x=" << xv << " err=" << d.abs_err.to_decimal(3));
      CHECK(d.passed);
      CHECK(d.abs_err < ctx.pow10(-35));
    }
  }
}

TEST_CASE("residue expansion domain", "[mellin]") {
  const PrecisionContext ctx(20);
  CHECK_THROWS_AS(g_expansion(1, ctx.parse("0.5"), ctx), DomainError);
  CHECK_THROWS_AS(g_expansion(2, ctx.parse("0.7"), ctx), DomainError);
  CHECK_THROWS_AS(g_expansion(2, ctx.real(0L), ctx), DomainError);
  CHECK_THROWS_AS(g_expansion(3, ctx.parse("0.1"), ctx), DomainError);
}

TEST_CASE("oscillatory part is visible at this resolution", "[mellin]") {
  // Dropping the sine series changes G_2 at the 1e-11 level, so agreement
  // to 1e-25 cannot come from the smooth part alone.
  const PrecisionContext ctx(30);
  const BigReal x = ctx.parse("0.3");
  const BigReal ln2 = ln(2L, ctx);
  BigReal smooth = -ctx.ratio(1, 2) - ln(x, ctx) / ln2;
  BigReal xk = ctx.real(1L);
  BigReal two_k = ctx.real(1L);
  BigReal sgn = ctx.real(1L);
  for (int k = 1; k <= 300; ++k) {
    xk *= x;
    two_k *= 2L;
    sgn *= -2L;
    smooth -= sgn / (two_k - 1L) * xk;
  }
  const BigReal gap = abs(g_direct(2, x, ctx).value - smooth);
  CHECK(gap > ctx.pow10(-13));
  CHECK(gap < ctx.pow10(-9));
}

TEST_CASE("lemma residual is O(h^2)", "[mellin][property]") {
  const PrecisionContext ctx(30);
  const BigReal h = ctx.pow10(-6);
  for (int n : {3, 5, 10}) {
    for (long k : {0L, 1L, 4L}) {
      for (const char* uv : {"0", "2.5"}) {
        const BigReal u = ctx.parse(uv);
        const LemmaCheck a = lemma_check(n, k, u, h, ctx);
        const LemmaCheck b = lemma_check(n, k, u, h / 2L, ctx);
        INFO("n=" << n << " k=" << k << " u=" << uv);
        CHECK(a.passed);
        CHECK(b.passed);
        const double ratio = (a.residual / b.residual).to_double();
        CHECK(ratio > 2.0);
        CHECK(ratio < 8.0);
      }
    }
  }
  CHECK(lemma_check(3, 1, ctx.real(0L), ctx).h == ctx.pow10(-10));
  CHECK_THROWS_AS(lemma_check(2, 1, ctx.real(0L), ctx), DomainError);
}

TEST_CASE("precision scaling of transforms and sums", "[mellin][property]") {
  for (int d : {30, 50}) {
    const PrecisionContext lo(d);
    const PrecisionContext hi = lo.widened(10);
    const BigReal s_lo = lo.ratio(1, 4);
    const BigReal s_hi = hi.ratio(1, 4);
    for (const char* id : {"g1", "g2", "fn(5)"}) {
      const MellinFunction fn = MellinFunction::parse(id);
      CHECK(rel_close(hi.adopt(mellin_closed(fn, s_lo, lo)), mellin_closed(fn, s_hi, hi), d, hi));
    }
    for (int n : {1, 2}) {
      const BigReal x_lo = lo.parse("0.2");
      const BigReal x_hi = hi.parse("0.2");
      CHECK(rel_close(hi.adopt(g_direct(n, x_lo, lo).value), g_direct(n, x_hi, hi).value, d, hi));
      CHECK(rel_close(hi.adopt(g_expansion(n, x_lo, lo).value), g_expansion(n, x_hi, hi).value, d, hi));
    }
  }
  const PrecisionContext lo(30);
  const PrecisionContext hi = lo.widened(10);
  CHECK(rel_close(hi.adopt(mellin_numeric(MellinFunction::g1(), lo.ratio(1, 8), lo)),
                  mellin_numeric(MellinFunction::g1(), hi.ratio(1, 8), hi), 30, hi));
}
