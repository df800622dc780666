// Numerical checks of the Mellin-transform closed forms and of the residue
// expansions of the harmonic sums G_n(x) = sum_{k>=1} g_n(2^k x).
//
//   g_1(x) = -2 (arctan(sqrt x) - pi/2)       g_1*(s) = pi / (s cos pi s)
//   g_2(x) = 1 / (1 + x)                      g_2*(s) = pi / sin pi s
//   f_n(x) = (sqrt x / (1+x))^{n-2} (1-x)/(1+x), n >= 3
//
// Transforms are integrated after the substitution x = e^t, which turns
// every integrand here into an analytic function decaying exponentially in
// both directions; the trapezoidal rule then converges geometrically in the
// step size.

#ifndef ALMOSTID_MELLIN_HPP
#define ALMOSTID_MELLIN_HPP

#include <cmath>
#include <future>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "almostid/precision.hpp"
#include "almostid/series.hpp"

namespace almostid {

enum class MellinKind { g1, g2, fn };

/// One of g1, g2 or f_n (n >= 3).
class MellinFunction {
 public:
  static MellinFunction g1() { return MellinFunction(MellinKind::g1, 1); }
  static MellinFunction g2() { return MellinFunction(MellinKind::g2, 2); }
  static MellinFunction f(int n) {
    if (n < 3) throw DomainError("f_n is defined for n >= 3, got " + std::to_string(n));
    return MellinFunction(MellinKind::fn, n);
  }

  /// Accepts "g1", "g2", "fn(5)", "fn5" and "f5".
  static MellinFunction parse(std::string_view id) {
    if (id == "g1") return g1();
    if (id == "g2") return g2();
    std::string s(id);
    std::string digits;
    if (s.rfind("fn(", 0) == 0 && s.size() > 4 && s.back() == ')') {
      digits = s.substr(3, s.size() - 4);
    } else if (s.rfind("fn", 0) == 0) {
      digits = s.substr(2);
    } else if (s.rfind("f", 0) == 0) {
      digits = s.substr(1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 6) {
      throw DomainError("unknown function id '" + s + "' (expected g1, g2 or fn(N))");
    }
    return f(std::stoi(digits));
  }

  MellinKind kind() const { return kind_; }
  int n() const { return n_; }

  std::string id() const {
    switch (kind_) {
      case MellinKind::g1: return "g1";
      case MellinKind::g2: return "g2";
      case MellinKind::fn: break;
    }
    return "fn(" + std::to_string(n_) + ")";
  }

  friend bool operator==(const MellinFunction&, const MellinFunction&) = default;

 private:
  MellinFunction(MellinKind k, int n) : kind_(k), n_(n) {}
  MellinKind kind_;
  int n_;
};

struct MellinCheck {
  MellinFunction function = MellinFunction::g2();
  BigReal s;
  BigReal numeric;
  BigReal closed;
  BigReal abs_err;
  bool passed = false;
};

struct DualCheck {
  int n = 1;
  BigReal x;
  BigReal direct;
  BigReal expansion;
  BigReal abs_err;
  bool passed = false;
};

struct LemmaCheck {
  int n = 3;
  long k = 0;
  BigReal u;
  BigReal h;
  BigReal residual;
  BigReal bound;  // 10 h^2
  bool passed = false;
};

/// Pointwise value of g1, g2 or f_n at x > 0. g1 is evaluated as
/// 2 arctan(1/sqrt x), which avoids cancellation for large x.
inline BigReal evaluate(const MellinFunction& fn, const BigReal& x, const PrecisionContext& ctx) {
  if (!(x > 0L)) throw DomainError(fn.id() + ": x must be positive");
  switch (fn.kind()) {
    case MellinKind::g1: return 2L * arctan(1L / sqrt(x, ctx), ctx);
    case MellinKind::g2: return 1L / (x + 1L);
    case MellinKind::fn: break;
  }
  const BigReal denom = x + 1L;
  return pow(sqrt(x, ctx) / denom, fn.n() - 2, ctx) * (1L - x) / denom;
}

namespace detail {

inline void require_strip(const BigReal& s, const char* what) {
  if (!(s > 0L) || !(s * 2L < 1L)) {
    throw DomainError(std::string(what) + ": s must lie in (0, 1/2), got " + s.to_decimal(20));
  }
}

// |integrand(t)| <= (left_c0 + left_c1 |t|) e^{left_rate t}   for t <= 0,
// |integrand(t)| <= right_c e^{-right_rate t}                 for t >= 0.
struct DecayModel {
  double left_rate;
  double left_c0;
  double left_c1;
  double right_rate;
  double right_c;
};

// Integer window [a, b] outside of which each tail integral is below
// exp(ln_tol).
inline std::pair<long, long> truncation_window(const DecayModel& d, double ln_tol) {
  constexpr long kMaxWindow = 2000000;
  auto left_ln = [&](double a) {
    const double r = d.left_rate;
    return r * a + std::log((d.left_c0 + d.left_c1 * -a) / r + d.left_c1 / (r * r));
  };
  long a = 0;
  while (left_ln(static_cast<double>(a)) > ln_tol) {
    if (--a < -kMaxWindow) throw ConvergenceError("quadrature window too large (s too close to strip edge)");
  }
  long b = 0;
  while (std::log(d.right_c / d.right_rate) - d.right_rate * static_cast<double>(b) > ln_tol) {
    if (++b > kMaxWindow) throw ConvergenceError("quadrature window too large (s too close to strip edge)");
  }
  return {a, b};
}

// sum_{i < count} f(start + i*step). Fixed chunking keeps the summation
// order, and so the result, independent of the thread count.
template <class F>
BigReal sum_grid(const F& f, const BigReal& start, const BigReal& step, long count, const PrecisionContext& ctx) {
  constexpr long kChunks = 16;
  auto chunk_sum = [&](long lo, long hi) {
    BigReal acc = ctx.real(0L);
    for (long i = lo; i < hi; ++i) acc += f(start + step * i);
    return acc;
  };
  std::vector<std::pair<long, long>> ranges;
  for (long c = 0; c < kChunks; ++c) ranges.emplace_back(count * c / kChunks, count * (c + 1) / kChunks);
  std::vector<BigReal> partial(ranges.size(), ctx.real(0L));
  if (std::thread::hardware_concurrency() > 1 && count > 64) {
    std::vector<std::future<BigReal>> jobs;
    for (auto [lo, hi] : ranges) jobs.push_back(std::async(std::launch::async, chunk_sum, lo, hi));
    for (std::size_t i = 0; i < jobs.size(); ++i) partial[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < ranges.size(); ++i) partial[i] = chunk_sum(ranges[i].first, ranges[i].second);
  }
  BigReal total = ctx.real(0L);
  for (const auto& p : partial) total += p;
  return total;
}

// Trapezoidal rule on [a, b] starting from step 1 and halving until two
// successive estimates agree to `tol`.
template <class F>
BigReal trapezoid_halving(const F& f, long a, long b, const BigReal& tol, const PrecisionContext& ctx,
                          int max_halvings = 14) {
  BigReal h = ctx.real(1L);
  const BigReal lo = ctx.real(a);
  BigReal estimate = sum_grid(f, lo, h, b - a + 1, ctx) - (f(lo) + f(ctx.real(b))) / 2L;
  long intervals = b - a;
  for (int level = 1; level <= max_halvings; ++level) {
    h /= 2L;
    BigReal mids = sum_grid(f, lo + h, h * 2L, intervals, ctx);
    BigReal next = estimate / 2L + h * mids;
    intervals *= 2;
    const bool agree = abs(next - estimate) < tol;
    estimate = std::move(next);
    if (agree && level >= 2) return estimate;
  }
  throw ConvergenceError("trapezoidal refinement did not converge");
}

inline DecayModel pointwise_decay(const MellinFunction& fn, double s) {
  const double pi = 3.14159265358979324;
  switch (fn.kind()) {
    case MellinKind::g1: return {s, pi, 0.0, 0.5 - s, 2.0};
    case MellinKind::g2: return {s, 1.0, 0.0, 1.0 - s, 1.0};
    case MellinKind::fn: break;
  }
  const double a = 0.5 * (fn.n() - 2);
  return {s + a, 1.0, 0.0, a - s, 1.0};
}

// Bounds for F(x) = sum_{k>=1} g(2^k x); for x < 1 at most log2(1/x)
// terms are "saturated" (2^k x < 1).
inline DecayModel harmonic_decay(const MellinFunction& fn, double s) {
  const double pi = 3.14159265358979324;
  const double ln2 = 0.69314718055994531;
  const double rt2 = 1.41421356237309505;
  switch (fn.kind()) {
    case MellinKind::g1: return {s, 2.0 / (1.0 - 1.0 / rt2), pi / ln2, 0.5 - s, 2.0 / (rt2 - 1.0)};
    case MellinKind::g2: return {s, 2.0, 1.0 / ln2, 1.0 - s, 1.0};
    case MellinKind::fn: break;
  }
  const double a = 0.5 * (fn.n() - 2);
  return {s, 2.0 / (1.0 - std::exp2(-a)), 0.0, a - s, 1.0 / (std::exp2(a) - 1.0)};
}

// Largest k >= 0 with 2^k x <= 1/4.
inline long saturated_count(const BigReal& x, const PrecisionContext& ctx) {
  const BigReal quarter = ctx.ratio(1, 4);
  long k0 = static_cast<long>(std::floor((std::log(0.25) - x.log_abs()) / 0.69314718055994531));
  if (k0 < 0) k0 = 0;
  auto y = [&](long k) {
    BigReal r = x;
    mpfr_mul_2si(r.get(), r.get(), k, MPFR_RNDN);
    return r;
  };
  while (k0 > 0 && y(k0) > quarter) --k0;
  while (y(k0 + 1) <= quarter) ++k0;
  return k0;
}

// sum_{k>=1} g(2^k x) for g = g1 or g2, to absolute accuracy eps.
// Terms with 2^k x <= 1/4 and 2^k x >= 4 are expanded in their Taylor
// series; the sums over k of each Taylor power are geometric and taken in
// closed form, so no k-truncation is needed. The remaining O(1) terms are
// evaluated directly.
inline BigReal harmonic_sum_g(const MellinFunction& fn, const BigReal& x, const BigReal& eps,
                              const PrecisionContext& ctx) {
  const bool is_g1 = fn.kind() == MellinKind::g1;
  const BigReal one = ctx.real(1L);
  const BigReal four = ctx.real(4L);
  const BigReal small = eps / 16L;
  const long k0 = saturated_count(x, ctx);

  BigReal total = ctx.real(0L);

  if (k0 >= 1) {
    BigReal ymax = x;
    mpfr_mul_2si(ymax.get(), ymax.get(), k0, MPFR_RNDN);
    BigReal series = ctx.real(0L);
    if (is_g1) {
      // 2 arctan(1/sqrt y) = pi - 2 sum_j (-1)^j z^{2j+1}/(2j+1), z = sqrt y.
      const BigReal z = sqrt(ymax, ctx);
      const BigReal zsq = ymax;
      BigReal zp = z;
      BigReal rp = one / sqrt(ctx.real(2L), ctx);   // 2^{-p/2}
      BigReal rkp = pow(rp, k0, ctx);                // 2^{-p k0 / 2}
      const BigReal rk_step = pow(ctx.real(2L), -k0, ctx);
      for (long p = 1;; p += 2) {
        BigReal t = zp * (one - rkp) / (one - rp) / p;
        series += ((p / 2) % 2 == 0) ? t : -t;
        if (t < small) break;
        zp *= zsq;
        rp /= 2L;
        rkp *= rk_step;
      }
      total += const_pi(ctx) * k0 - 2L * series;
    } else {
      // 1/(1+y) = sum_j (-y)^j.
      BigReal yp = ymax;
      BigReal rp = ctx.ratio(1, 2);
      BigReal rkp = pow(ctx.real(2L), -k0, ctx);
      const BigReal rk_step = rkp;
      for (long j = 1;; ++j) {
        BigReal t = yp * (one - rkp) / (one - rp);
        series += (j % 2 == 0) ? t : -t;
        if (t < small) break;
        yp *= ymax;
        rp /= 2L;
        rkp *= rk_step;
      }
      total += ctx.real(k0) + series;
    }
  }

  long k = k0 + 1;
  BigReal y = x;
  mpfr_mul_2si(y.get(), y.get(), k, MPFR_RNDN);
  for (; y < four; ++k) {
    total += evaluate(fn, y, ctx);
    mpfr_mul_2si(y.get(), y.get(), 1, MPFR_RNDN);
  }

  // Remaining terms have y >= 4, v = 1/y <= 1/4.
  const BigReal v = one / y;
  BigReal series = ctx.real(0L);
  if (is_g1) {
    // 2 arctan(w) = 2 sum_j (-1)^j w^{2j+1}/(2j+1), w = sqrt v, geometric in k.
    const BigReal w = sqrt(v, ctx);
    BigReal wp = w;
    BigReal rp = one / sqrt(ctx.real(2L), ctx);
    for (long p = 1;; p += 2) {
      BigReal t = wp / (one - rp) / p;
      series += ((p / 2) % 2 == 0) ? t : -t;
      if (t < small) break;
      wp *= v;
      rp /= 2L;
    }
    total += 2L * series;
  } else {
    // 1/(1+y) = sum_{j>=1} (-1)^{j-1} v^j.
    BigReal vp = v;
    BigReal rp = ctx.ratio(1, 2);
    for (long j = 1;; ++j) {
      BigReal t = vp / (one - rp);
      series += (j % 2 == 1) ? t : -t;
      if (t < small) break;
      vp *= v;
      rp /= 2L;
    }
    total += series;
  }
  return total;
}

// sum_{k>=1} f_n(2^k x) to absolute accuracy eps, skipping both geometric
// tails: |f_n(y)| <= min(y^a, y^-a) with a = (n-2)/2.
inline BigReal harmonic_sum_f(const MellinFunction& fn, const BigReal& x, const BigReal& eps,
                              const PrecisionContext& ctx) {
  const double a = 0.5 * (fn.n() - 2);
  const double ln2 = 0.69314718055994531;
  const double t = x.log_abs();
  const double ln_budget = eps.log_abs() - std::log(4.0) + std::log1p(-std::exp2(-a));
  // Skip k <= k_skip: sum of those terms <= y_{k_skip}^a / (1 - 2^-a).
  long k_skip = static_cast<long>(std::floor((ln_budget / a - t) / ln2)) - 1;
  if (k_skip < 0) k_skip = 0;
  // Stop after K: sum_{k>K} <= y_{K+1}^{-a} / (1 - 2^-a).
  long k_last = static_cast<long>(std::ceil((-ln_budget / a - t) / ln2));
  if (k_last < k_skip) k_last = k_skip;
  BigReal total = ctx.real(0L);
  BigReal y = x;
  mpfr_mul_2si(y.get(), y.get(), k_skip + 1, MPFR_RNDN);
  for (long k = k_skip + 1; k <= k_last; ++k) {
    total += evaluate(fn, y, ctx);
    mpfr_mul_2si(y.get(), y.get(), 1, MPFR_RNDN);
  }
  return total;
}

inline BigReal harmonic_sum(const MellinFunction& fn, const BigReal& x, const BigReal& eps,
                            const PrecisionContext& ctx) {
  return fn.kind() == MellinKind::fn ? harmonic_sum_f(fn, x, eps, ctx) : harmonic_sum_g(fn, x, eps, ctx);
}

inline BigReal quadrature_tol(const PrecisionContext& ctx) { return ctx.pow10(-(ctx.digits() + 1)); }

inline BigReal check_tol(const PrecisionContext& ctx) { return ctx.pow10(-(ctx.digits() - 5)); }

}  // namespace detail

/// Closed-form transform on the real axis.
///   g1: pi / (s cos pi s)      g2: pi / sin pi s
///   f_{2l}:   2/(2l-2)! * pi/sin(pi s) * prod_{j=0}^{l-2} (j^2 - s^2)
///   f_{2l+1}: 2/(2l-1)! * (-pi s / cos pi s) * prod_{j=0}^{l-2} ((j+1/2)^2 - s^2)
inline BigReal mellin_closed(const MellinFunction& fn, const BigReal& s, const PrecisionContext& ctx) {
  detail::require_strip(s, "mellin_closed");
  const BigReal pi = const_pi(ctx);
  const BigReal ps = pi * s;
  const BigReal sn = sin(ps, ctx);
  const BigReal cs = cos(ps, ctx);
  const BigReal& tol = ctx.tail_tol();
  auto near_pole = [&](const BigReal& v) { return abs(v) < tol; };

  switch (fn.kind()) {
    case MellinKind::g1:
      if (near_pole(cs) || near_pole(s)) throw DomainError("mellin_closed(g1): s too close to a pole");
      return pi / (s * cs);
    case MellinKind::g2:
      if (near_pole(sn)) throw DomainError("mellin_closed(g2): s too close to a pole");
      return pi / sn;
    case MellinKind::fn: break;
  }
  const int n = fn.n();
  const BigReal s2 = s * s;
  BigReal prod = ctx.real(1L);
  if (n % 2 == 0) {
    if (near_pole(sn)) throw DomainError("mellin_closed(" + fn.id() + "): s too close to a pole");
    const int l = n / 2;
    for (long j = 0; j <= l - 2; ++j) prod *= ctx.real(j * j) - s2;
    return 2L * pi / sn * prod / factorial(2L * l - 2, ctx);
  }
  if (near_pole(cs)) throw DomainError("mellin_closed(" + fn.id() + "): s too close to a pole");
  const int l = (n - 1) / 2;
  for (long j = 0; j <= l - 2; ++j) prod *= ctx.ratio((2 * j + 1) * (2 * j + 1), 4) - s2;
  return -2L * ps / cs * prod / factorial(2L * l - 1, ctx);
}

/// int_0^inf f(x) x^{s-1} dx by trapezoidal quadrature in t = ln x.
inline BigReal mellin_numeric(const MellinFunction& fn, const BigReal& s, const PrecisionContext& ctx) {
  detail::require_strip(s, "mellin_numeric");
  const BigReal tol = detail::quadrature_tol(ctx);
  const double ln_tail = tol.log_abs() - std::log(8.0);
  const auto [a, b] = detail::truncation_window(detail::pointwise_decay(fn, s.to_double()), ln_tail);
  auto integrand = [&](const BigReal& t) { return evaluate(fn, exp(t, ctx), ctx) * exp(s * t, ctx); };
  return detail::trapezoid_halving(integrand, a, b, tol / 4L, ctx);
}

inline MellinCheck mellin_check(const MellinFunction& fn, const BigReal& s, const PrecisionContext& ctx) {
  MellinCheck c;
  c.function = fn;
  c.s = s;
  c.closed = mellin_closed(fn, s, ctx);
  c.numeric = mellin_numeric(fn, s, ctx);
  c.abs_err = abs(c.numeric - c.closed);
  c.passed = c.abs_err < detail::check_tol(ctx);
  return c;
}

/// Mellin transform of F(x) = sum_{k>=1} f(2^k x), integrated numerically,
/// against f*(s) / (2^s - 1).
inline MellinCheck harmonic_factor_check(const MellinFunction& fn, const BigReal& s, const PrecisionContext& ctx) {
  detail::require_strip(s, "harmonic_factor_check");
  const BigReal tol = detail::quadrature_tol(ctx);
  const double ln_tail = tol.log_abs() - std::log(8.0);
  const auto [a, b] = detail::truncation_window(detail::harmonic_decay(fn, s.to_double()), ln_tail);
  // Inner sums accurate to eps(t) = tol/4 * e^{-st} / (b - a + 1) keep the
  // accumulated inner error below tol/4.
  const BigReal inner = tol / (4L * (b - a + 1));
  auto integrand = [&](const BigReal& t) {
    const BigReal weight = exp(s * t, ctx);
    return detail::harmonic_sum(fn, exp(t, ctx), inner / weight, ctx) * weight;
  };
  MellinCheck c;
  c.function = fn;
  c.s = s;
  c.numeric = detail::trapezoid_halving(integrand, a, b, tol / 4L, ctx);
  c.closed = mellin_closed(fn, s, ctx) / (pow(ctx.real(2L), s, ctx) - 1L);
  c.abs_err = abs(c.numeric - c.closed);
  c.passed = c.abs_err < detail::check_tol(ctx);
  return c;
}

/// G_n(x) = sum_{k>=1} g_n(2^k x) by plain summation. Terms are bounded by
/// 2/sqrt(2^k x) (n = 1) and 1/(2^k x) (n = 2), which gives the tail bound.
inline SeriesValue g_direct(int n, const BigReal& x, const PrecisionContext& ctx) {
  if (n != 1 && n != 2) throw DomainError("g_direct: n must be 1 or 2, got " + std::to_string(n));
  if (!(x > 0L)) throw DomainError("g_direct: x must be positive, got " + x.to_decimal(20));
  const MellinFunction fn = n == 1 ? MellinFunction::g1() : MellinFunction::g2();
  const BigReal& tol = ctx.tail_tol();
  const BigReal c1 = 2L / (sqrt(ctx.real(2L), ctx) - 1L);
  BigReal sum = ctx.real(0L);
  BigReal y = x;
  long k = 0;
  BigReal tail = ctx.real(0L);
  for (;;) {
    ++k;
    mpfr_mul_2si(y.get(), y.get(), 1, MPFR_RNDN);
    sum += evaluate(fn, y, ctx);
    // Remainder after k terms.
    tail = n == 1 ? c1 / sqrt(y, ctx) : 1L / y;
    if (tail < tol) break;
    if (k > 10000000) throw ConvergenceError("g_direct: too many terms");
  }
  BigReal bound = tail + detail::rounding_allowance(sum, k, 8, ctx);
  return SeriesValue{std::move(sum), std::move(bound), k};
}

/// Residue expansion of G_n for 0 < x < 1/2:
///   G_1(x) = -pi/2 - pi log2 x + sum_{k>=0} (-2)^{k+2} / ((1+2k)(2^{k+1} - sqrt 2)) sqrt(x) x^k
///            - sum_{k>=1} sin(2k pi log2 x) / (k cosh(2k pi^2 / ln 2))
///   G_2(x) = -1/2 - log2 x - sum_{k>=1} (-2)^k / (2^k - 1) x^k
///            - (2 pi / ln 2) sum_{k>=1} sin(2k pi log2 x) / sinh(2k pi^2 / ln 2)
/// The x < 1/2 restriction keeps a comfortable geometric margin on the
/// power series.
inline SeriesValue g_expansion(int n, const BigReal& x, const PrecisionContext& ctx) {
  if (n != 1 && n != 2) throw DomainError("g_expansion: n must be 1 or 2, got " + std::to_string(n));
  if (!(x > 0L)) throw DomainError("g_expansion: x must be positive, got " + x.to_decimal(20));
  if (!(x * 2L < 1L)) throw DomainError("g_expansion: requires x < 1/2, got " + x.to_decimal(20));

  const BigReal& tol = ctx.tail_tol();
  const BigReal pi = const_pi(ctx);
  const BigReal ln2 = ln(2L, ctx);
  const BigReal log2x = ln(x, ctx) / ln2;
  const BigReal one = ctx.real(1L);
  const BigReal rt2 = sqrt(ctx.real(2L), ctx);

  BigReal value = ctx.real(0L);
  long terms = 0;

  // Logarithmic part and power series.
  BigReal power_tail = ctx.real(0L);
  if (n == 1) {
    value = -(pi / 2L) - pi * log2x;
    const BigReal rx = sqrt(x, ctx);
    const BigReal cmax = 4L / (2L - rt2);  // sup_k 2^{k+2} / (2^{k+1} - sqrt 2)
    BigReal xk = one;                      // x^k
    BigReal two_k1 = ctx.real(2L);         // 2^{k+1}
    BigReal sgn_pow = ctx.real(4L);        // (-2)^{k+2}
    for (long k = 0;; ++k) {
      value += sgn_pow / ((2 * k + 1) * (two_k1 - rt2)) * rx * xk;
      ++terms;
      xk *= x;
      power_tail = cmax / (2 * k + 3) * rx * xk / (one - x);
      if (power_tail < tol) break;
      two_k1 *= 2L;
      sgn_pow *= -2L;
    }
  } else {
    value = -ctx.ratio(1, 2) - log2x;
    BigReal xk = one;
    BigReal two_k = one;
    BigReal sgn_pow = one;
    for (long k = 1;; ++k) {
      xk *= x;
      two_k *= 2L;
      sgn_pow *= -2L;
      value -= sgn_pow / (two_k - 1L) * xk;
      ++terms;
      power_tail = 2L * xk * x / (one - x);
      if (power_tail < tol) break;
    }
  }

  // Oscillatory part; the stopping rule is applied to the envelope because
  // the sines can vanish identically (x a power of 2).
  const BigReal arg = 2L * pi * pi / ln2;
  const BigReal prefactor = n == 1 ? one : 2L * pi / ln2;
  BigReal prev = ctx.real(0L);
  BigReal osc_tail = ctx.real(0L);
  for (long k = 1;; ++k) {
    const BigReal a = arg * k;
    const BigReal envelope = n == 1 ? one / (cosh(a, ctx) * k) : prefactor / sinh(a, ctx);
    value -= sin(2L * pi * k * log2x, ctx) * envelope;
    ++terms;
    if (k > 1 && envelope < tol && envelope * 2L <= prev) {
      osc_tail = 2L * envelope;
      break;
    }
    prev = envelope;
    if (k > 100000) throw ConvergenceError("g_expansion: oscillatory series did not converge");
  }

  BigReal bound = power_tail + osc_tail + detail::rounding_allowance(value, terms, 8, ctx);
  return SeriesValue{std::move(value), std::move(bound), terms};
}

inline DualCheck dual_check(int n, const BigReal& x, const PrecisionContext& ctx) {
  DualCheck d;
  d.n = n;
  d.x = x;
  d.expansion = g_expansion(n, x, ctx).value;
  d.direct = g_direct(n, x, ctx).value;
  d.abs_err = abs(d.direct - d.expansion);
  d.passed = d.abs_err < detail::check_tol(ctx);
  return d;
}

/// Finite-difference check of the antiderivative recurrence
///   phi_n(u) = (1/4)((n-2)/(n-1)) phi_{n-2}(u) + dR_{n,k}/du,
/// phi_n(u) = (2^{-(k-u)/2} + 2^{(k-u)/2})^{-n},
/// R_{n,k}(u) = (2^{(k-u)/2} / (1 + 2^{k-u}))^{n-2} (1 - 2^{k-u}) / (1 + 2^{k-u}) / (2 ln 2 (n-1)).
/// dR/du is a central difference with step h; the residual is O(h^2).
inline LemmaCheck lemma_check(int n, long k, const BigReal& u, const BigReal& h, const PrecisionContext& ctx) {
  if (n < 3) throw DomainError("lemma_check: n must be >= 3, got " + std::to_string(n));
  if (!(h > 0L)) throw DomainError("lemma_check: step must be positive");
  const BigReal two = ctx.real(2L);
  const BigReal ln2 = ln(2L, ctx);
  auto phi = [&](int order, const BigReal& v) {
    const BigReal half = pow(two, (ctx.real(k) - v) / 2L, ctx);
    return pow(1L / half + half, -order, ctx);
  };
  auto remainder = [&](const BigReal& v) {
    const BigReal y = pow(two, ctx.real(k) - v, ctx);
    const BigReal ry = sqrt(y, ctx);
    return pow(ry / (y + 1L), n - 2, ctx) * (1L - y) / (y + 1L) / (2L * ln2 * (n - 1));
  };
  const BigReal derivative = (remainder(u + h) - remainder(u - h)) / (2L * h);
  const BigReal factor = ctx.real(n - 2) / (4L * (n - 1));
  LemmaCheck c;
  c.n = n;
  c.k = k;
  c.u = u;
  c.h = h;
  c.residual = abs(phi(n, u) - factor * phi(n - 2, u) - derivative);
  c.bound = 10L * h * h;
  c.passed = c.residual < c.bound;
  return c;
}

/// Default step h = 10^{-floor(digits/3)}.
inline LemmaCheck lemma_check(int n, long k, const BigReal& u, const PrecisionContext& ctx) {
  return lemma_check(n, k, u, ctx.pow10(-(ctx.digits() / 3)), ctx);
}

}  // namespace almostid

#endif  // ALMOSTID_MELLIN_HPP
