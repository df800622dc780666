// The almost-identity sums
//
//   u_n(m) = ln(m) * sum_{k in Z} (m^{k/2} + m^{-k/2})^{-n},
//
// their exact limits t_n in Q u pi*Q, and the hyperbolic correction series
// r_n that account for the gap through
//
//   u_n = ((n-2) / (4(n-1))) * u_{n-2} + r_n.

#ifndef ALMOSTID_SERIES_HPP
#define ALMOSTID_SERIES_HPP

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "almostid/precision.hpp"
#include "almostid/rational.hpp"

namespace almostid {

/// A truncated sum together with a bound on |true value - value|.
/// The bound covers the truncated remainder plus a floating-point rounding
/// allowance of a few ulps per accumulated term.
struct SeriesValue {
  BigReal value;
  BigReal tail_bound;
  long terms_used = 0;

  friend bool operator==(const SeriesValue&, const SeriesValue&) = default;
};

struct IdentityReport {
  int n = 0;
  long base_m = 2;
  SeriesValue u;
  ExactTarget target;
  BigReal delta;        // u - t_n
  SeriesValue r_predicted;
  BigReal residual;     // delta - r_predicted
  int digits = 0;
  int guard = PrecisionContext::kDefaultGuard;
  bool passed = false;

  friend bool operator==(const IdentityReport&, const IdentityReport&) = default;
};

/// How verify_identity decides pass/fail. The default credits the reported
/// tail bounds; strict mode compares against 10^-digits alone.
struct VerifyPolicy {
  bool tail_credit = true;
};

struct RecurrenceCheck {
  BigReal residual;
  BigReal bound;  // sum of the three tail bounds
  bool within() const { return abs(residual) <= bound; }
};

struct ScanCell {
  int n = 0;
  long base_m = 2;
  std::optional<IdentityReport> report;
  std::string error;
};

namespace detail {

inline void require_index(int n, const char* what) {
  if (n < 1) {
    throw DomainError(std::string(what) + ": n must be >= 1 (n = 0 diverges), got " + std::to_string(n));
  }
}

inline void require_base(long m) {
  if (m < 2) throw DomainError("base m must be >= 2, got " + std::to_string(m));
}

// Rounding allowance for a sum of `terms` values computed with a handful of
// correctly rounded operations each.
inline BigReal rounding_allowance(const BigReal& value, long terms, long ops_per_term,
                                  const PrecisionContext& ctx) {
  BigReal ulp = ctx.real(1L);
  mpfr_mul_2si(ulp.get(), ulp.get(), 1 - static_cast<long>(ctx.bits()), MPFR_RNDU);
  return abs(value) * ulp * (terms + ops_per_term + 10);
}

// Constants shared by the hyperbolic series for one base.
struct HyperbolicKernel {
  BigReal pi;
  BigReal log_m;
  BigReal arg;           // 2 pi^2 / ln m
  BigReal omega_sq;      // 4 pi^2 / ln(m)^2

  HyperbolicKernel(long m, const PrecisionContext& ctx)
      : pi(const_pi(ctx)), log_m(ln(m, ctx)), arg(2L * pi * pi / log_m), omega_sq(arg * arg / (pi * pi)) {}
};

inline BigReal coeff_c(int l, long k, const HyperbolicKernel& h, const PrecisionContext& ctx) {
  const BigReal w = h.omega_sq * (k * k);
  BigReal prod = ctx.real(1L);
  for (long j = 0; j <= l - 2; ++j) prod *= w + j * j;
  return prod / factorial(2L * l - 2, ctx);
}

inline BigReal coeff_b(int l, long k, const HyperbolicKernel& h, const PrecisionContext& ctx) {
  const BigReal w = h.omega_sq * (k * k);
  BigReal prod = ctx.real(1L);
  for (long j = 0; j <= l - 2; ++j) prod *= w + ctx.ratio((2 * j + 1) * (2 * j + 1), 4);
  return 2L * h.pi * k * prod / (h.log_m * factorial(2L * l - 1, ctx));
}

// Multiplier (n-2)/(4(n-1)) of the recurrence.
inline ExactRational recurrence_factor(int n) { return ExactRational(n - 2, 4L * (n - 1)); }

}  // namespace detail

/// Direct bilateral summation, folded with the k <-> -k symmetry:
/// ln(m) * (2^-n + 2 * sum_{k=1}^{K} (m^{k/2} + m^{-k/2})^{-n}).
/// K is the smallest index whose geometric tail bound
/// 2 ln(m) m^{-nK/2} / (1 - m^{-n/2}) falls below ctx.tail_tol().
inline SeriesValue u_direct(int n, long base_m, const PrecisionContext& ctx) {
  detail::require_index(n, "u_direct");
  detail::require_base(base_m);

  const BigReal log_m = ln(base_m, ctx);
  const BigReal one = ctx.real(1L);
  const BigReal ratio = one - pow(pow(ctx.real(base_m), -n, ctx), ctx.ratio(1, 2), ctx);  // 1 - m^{-n/2}
  auto tail_after = [&](long K) {
    // m^{-nK/2} = exp(-(nK/2) ln m)
    return 2L * log_m * exp(-(log_m * (static_cast<long>(n) * K)) / 2L, ctx) / ratio;
  };

  const double lhs = std::log(2.0 * log_m.to_double() / ratio.to_double()) - ctx.tail_tol().log_abs();
  long K = std::max(1L, static_cast<long>(std::ceil(lhs / (0.5 * n * std::log(static_cast<double>(base_m))))));
  BigReal tail = tail_after(K);
  while (tail >= ctx.tail_tol()) tail = tail_after(++K);
  while (K > 1) {
    BigReal t = tail_after(K - 1);
    if (t >= ctx.tail_tol()) break;
    tail = std::move(t);
    --K;
  }

  const BigReal q = one / sqrt(ctx.real(base_m), ctx);  // m^{-1/2}
  BigReal p = one;
  BigReal sum = ctx.real(0L);
  for (long k = 1; k <= K; ++k) {
    p *= q;
    sum += pow(p / (one + p * p), n, ctx);
  }
  BigReal value = log_m * (pow(ctx.real(2L), -n, ctx) + 2L * sum);
  BigReal bound = tail + detail::rounding_allowance(value, K, n, ctx);
  return SeriesValue{std::move(value), std::move(bound), K + 1};
}

/// Exact limit t_n: t_1 = pi, t_2 = 1, t_n = ((n-2)/(4(n-1))) t_{n-2}.
inline ExactTarget target(int n) {
  detail::require_index(n, "target");
  ExactTarget t{ExactRational(1), n % 2 == 1};
  for (int j = (n % 2 == 1 ? 3 : 4); j <= n; j += 2) t.q = t.q * detail::recurrence_factor(j);
  return t;
}

/// c_k = prod_{j=0}^{l-2} (j^2 + 4 pi^2 k^2 / ln(m)^2) / (2l-2)!, empty product = 1.
inline BigReal coeff_c(int l, long k, long base_m, const PrecisionContext& ctx) {
  if (l < 1) throw DomainError("coeff_c: l must be >= 1");
  if (k < 1) throw DomainError("coeff_c: k must be >= 1");
  detail::require_base(base_m);
  return detail::coeff_c(l, k, detail::HyperbolicKernel(base_m, ctx), ctx);
}

/// b_k = 2 pi k prod_{j=0}^{l-2} ((j+1/2)^2 + 4 pi^2 k^2 / ln(m)^2) / (ln(m) (2l-1)!).
inline BigReal coeff_b(int l, long k, long base_m, const PrecisionContext& ctx) {
  if (l < 1) throw DomainError("coeff_b: l must be >= 1");
  if (k < 1) throw DomainError("coeff_b: k must be >= 1");
  detail::require_base(base_m);
  return detail::coeff_b(l, k, detail::HyperbolicKernel(base_m, ctx), ctx);
}

/// Correction series r_n(m).
///   n = 1:       sum_k 2 pi / cosh(2k pi^2 / ln m)
///   n = 2l:      2 pi / (ln(m)(n-1)) * sum_k c_k 2k pi / sinh(2k pi^2 / ln m)
///   n = 2l+1>1:  2 pi / (ln(m)(n-1)) * sum_k b_k 2k pi / cosh(2k pi^2 / ln m)
/// Summation stops at the first term below tail_tol * |partial sum| that is
/// also at most half its predecessor; the tail is bounded by twice that term.
inline SeriesValue r_correction(int n, long base_m, const PrecisionContext& ctx) {
  detail::require_index(n, "r_correction");
  detail::require_base(base_m);
  const detail::HyperbolicKernel h(base_m, ctx);
  const int l = n / 2;

  auto term = [&](long k) -> BigReal {
    const BigReal a = h.arg * k;
    if (n == 1) return 2L * h.pi / cosh(a, ctx);
    if (n % 2 == 0) return detail::coeff_c(l, k, h, ctx) * (2L * k) * h.pi / sinh(a, ctx);
    return detail::coeff_b(l, k, h, ctx) * (2L * k) * h.pi / cosh(a, ctx);
  };

  constexpr long kMaxTerms = 100000;
  BigReal sum = ctx.real(0L);
  BigReal prev = ctx.real(0L);
  BigReal last = ctx.real(0L);
  long k = 1;
  for (;; ++k) {
    if (k > kMaxTerms) throw ConvergenceError("r_correction: no convergence within term cap");
    BigReal t = term(k);
    sum += t;
    const bool small = t < ctx.tail_tol() * abs(sum);
    const bool decaying = k > 1 && t * 2L <= prev;
    last = t;
    if (small && decaying) break;
    prev = std::move(t);
  }

  BigReal scale = ctx.real(1L);
  if (n > 1) scale = 2L * h.pi / (h.log_m * (n - 1));
  BigReal value = scale * sum;
  BigReal bound = 2L * scale * last + detail::rounding_allowance(value, k, 3L * l + 10, ctx);
  return SeriesValue{std::move(value), std::move(bound), k};
}

/// Accumulated correction D_n with u_n = t_n + D_n:
/// D_1 = r_1, D_2 = r_2, D_n = r_n + ((n-2)/(4(n-1))) D_{n-2}.
inline SeriesValue predicted_delta(int n, long base_m, const PrecisionContext& ctx) {
  detail::require_index(n, "predicted_delta");
  SeriesValue acc = r_correction(n % 2 == 1 ? 1 : 2, base_m, ctx);
  for (int j = (n % 2 == 1 ? 3 : 4); j <= n; j += 2) {
    const BigReal f = detail::recurrence_factor(j).to_real(ctx);
    SeriesValue r = r_correction(j, base_m, ctx);
    acc.value = r.value + f * acc.value;
    acc.tail_bound = r.tail_bound + f * acc.tail_bound;
    acc.terms_used += r.terms_used;
  }
  return acc;
}

/// End-to-end check u_n - t_n against the predicted correction.
inline IdentityReport verify_identity(int n, long base_m, const PrecisionContext& ctx,
                                      VerifyPolicy policy = {}) {
  detail::require_index(n, "verify_identity");
  detail::require_base(base_m);
  IdentityReport rep;
  rep.n = n;
  rep.base_m = base_m;
  rep.digits = ctx.digits();
  rep.guard = ctx.guard();
  rep.u = u_direct(n, base_m, ctx);
  rep.target = target(n);
  rep.delta = rep.u.value - rep.target.value(ctx);
  rep.r_predicted = predicted_delta(n, base_m, ctx);
  rep.residual = rep.delta - rep.r_predicted.value;
  BigReal allowance = ctx.pow10(-ctx.digits());
  if (policy.tail_credit) allowance += rep.u.tail_bound + rep.r_predicted.tail_bound;
  rep.passed = abs(rep.residual) <= allowance;
  return rep;
}

/// u_n - ((n-2)/(4(n-1))) u_{n-2} - r_n, with the combined tail bound.
inline RecurrenceCheck check_recurrence(int n, long base_m, const PrecisionContext& ctx) {
  if (n < 3) throw DomainError("check_recurrence: n must be >= 3, got " + std::to_string(n));
  detail::require_base(base_m);
  const SeriesValue un = u_direct(n, base_m, ctx);
  const SeriesValue um2 = u_direct(n - 2, base_m, ctx);
  const SeriesValue rn = r_correction(n, base_m, ctx);
  const BigReal f = detail::recurrence_factor(n).to_real(ctx);
  return RecurrenceCheck{un.value - f * um2.value - rn.value,
                         un.tail_bound + f * um2.tail_bound + rn.tail_bound};
}

/// Verifies every (n, m) cell. Output is sorted by (m, n) with duplicates
/// removed; per-cell errors are recorded rather than thrown. Cells run
/// concurrently when `parallel` is set.
inline std::vector<ScanCell> scan(std::vector<int> ns, std::vector<long> bases, const PrecisionContext& ctx,
                                  VerifyPolicy policy = {}, bool parallel = true) {
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());

  std::vector<ScanCell> cells;
  for (long m : bases) {
    for (int n : ns) cells.push_back(ScanCell{n, m, std::nullopt, {}});
  }

  auto run_cell = [&ctx, policy](ScanCell& cell) {
    try {
      cell.report = verify_identity(cell.n, cell.base_m, ctx, policy);
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  };

  if (parallel && cells.size() > 1) {
    std::vector<std::future<void>> jobs;
    jobs.reserve(cells.size());
    for (auto& cell : cells) jobs.push_back(std::async(std::launch::async, run_cell, std::ref(cell)));
    for (auto& j : jobs) j.get();
  } else {
    for (auto& cell : cells) run_cell(cell);
  }
  return cells;
}

}  // namespace almostid

#endif  // ALMOSTID_SERIES_HPP
