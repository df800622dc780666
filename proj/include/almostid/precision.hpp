// Arbitrary-precision substrate: precision contexts, MPFR-backed reals,
// constants and elementary functions.
//
// Every value is produced under a PrecisionContext. The context carries the
// requested decimal digits plus guard digits; all arithmetic is done at the
// resulting binary precision with round-to-nearest. MPFR rounds every
// elementary function correctly, so each result is within 1/2 ulp of the
// exact value at the working precision.

#ifndef ALMOSTID_PRECISION_HPP
#define ALMOSTID_PRECISION_HPP

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdlib>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace almostid {

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an iterative procedure fails to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Decimal digits -> bits, rounded up, with a few spare bits.
inline mpfr_prec_t digits_to_bits(int digits) {
  return static_cast<mpfr_prec_t>((static_cast<long>(digits) * 33220 + 9999) / 10000 + 4);
}

}  // namespace detail

/// Arbitrary-precision real. Immutable in spirit: every operation returns a
/// new value. The decimal precision it was produced under travels with it.
class BigReal {
 public:
  BigReal() : BigReal(0L, detail::digits_to_bits(20), 20) {}

  BigReal(long v, mpfr_prec_t bits, int digits) : digits_(digits) {
    mpfr_init2(x_, bits);
    mpfr_set_si(x_, v, MPFR_RNDN);
  }

  BigReal(const BigReal& o) : digits_(o.digits_) {
    mpfr_init2(x_, mpfr_get_prec(o.x_));
    mpfr_set(x_, o.x_, MPFR_RNDN);
  }

  BigReal(BigReal&& o) noexcept : digits_(o.digits_) {
    mpfr_init2(x_, MPFR_PREC_MIN);
    mpfr_swap(x_, o.x_);
  }

  BigReal& operator=(const BigReal& o) {
    if (this != &o) {
      mpfr_set_prec(x_, mpfr_get_prec(o.x_));
      mpfr_set(x_, o.x_, MPFR_RNDN);
      digits_ = o.digits_;
    }
    return *this;
  }

  BigReal& operator=(BigReal&& o) noexcept {
    mpfr_swap(x_, o.x_);
    std::swap(digits_, o.digits_);
    return *this;
  }

  ~BigReal() { mpfr_clear(x_); }

  /// Uninitialised-value constructor used by the arithmetic helpers.
  static BigReal with_precision(mpfr_prec_t bits, int digits) {
    return BigReal(0L, bits, digits);
  }

  /// Parses the decimal interchange format: optional sign, digits, optional
  /// '.', digits, optional exponent. No locale handling, no hex, no inf/nan.
  static BigReal from_decimal(std::string_view text, mpfr_prec_t bits, int digits) {
    static const std::regex grammar(R"(^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$)");
    std::string s(text);
    if (!std::regex_match(s, grammar)) {
      throw DomainError("malformed decimal string: '" + s + "'");
    }
    BigReal r = with_precision(bits, digits);
    char* end = nullptr;
    mpfr_strtofr(r.x_, s.c_str(), &end, 10, MPFR_RNDN);
    if (end == nullptr || *end != '\0') {
      throw DomainError("malformed decimal string: '" + s + "'");
    }
    return r;
  }

  mpfr_srcptr get() const { return x_; }
  mpfr_ptr get() { return x_; }

  mpfr_prec_t bits() const { return mpfr_get_prec(x_); }
  int precision_digits() const { return digits_; }

  bool is_zero() const { return mpfr_zero_p(x_) != 0; }
  bool is_finite() const { return mpfr_number_p(x_) != 0; }
  int sign() const { return mpfr_sgn(x_); }
  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

  /// Base-10 exponent e with 10^(e-1) <= |x| < 10^e, computed in double.
  /// Only meaningful for finite nonzero values.
  long decimal_exponent() const {
    long e2 = 0;
    double m = mpfr_get_d_2exp(&e2, x_, MPFR_RNDN);
    return static_cast<long>(std::floor(std::log10(std::fabs(m)) + e2 * 0.30102999566398120)) + 1;
  }

  /// Natural log of |x| as a double (for choosing truncation points).
  double log_abs() const {
    long e2 = 0;
    double m = mpfr_get_d_2exp(&e2, x_, MPFR_RNDN);
    return std::log(std::fabs(m)) + e2 * 0.69314718055994531;
  }

  /// Serialises as [-]0.<digits>e<+|->exp. With sig_digits == 0 enough
  /// digits are emitted that parsing at the same precision gives back the
  /// identical binary value.
  std::string to_decimal(std::size_t sig_digits = 0) const {
    if (mpfr_nan_p(x_)) return "nan";
    if (mpfr_inf_p(x_)) return mpfr_sgn(x_) < 0 ? "-inf" : "inf";
    if (mpfr_zero_p(x_)) return "0";
    std::size_t n = sig_digits != 0 ? sig_digits : mpfr_get_str_ndigits(10, bits());
    mpfr_exp_t e = 0;
    char* raw = mpfr_get_str(nullptr, &e, 10, n, x_, MPFR_RNDN);
    std::string digits(raw);
    mpfr_free_str(raw);
    std::string out;
    if (digits.front() == '-') {
      out.push_back('-');
      digits.erase(0, 1);
    }
    out += "0.";
    out += digits;
    out += e >= 0 ? "e+" : "e-";
    out += std::to_string(e >= 0 ? static_cast<long>(e) : -static_cast<long>(e));
    return out;
  }

  BigReal operator-() const {
    BigReal r = with_precision(bits(), digits_);
    mpfr_neg(r.x_, x_, MPFR_RNDN);
    return r;
  }

  BigReal& operator+=(const BigReal& o) { return *this = *this + o; }
  BigReal& operator-=(const BigReal& o) { return *this = *this - o; }
  BigReal& operator*=(const BigReal& o) { return *this = *this * o; }
  BigReal& operator/=(const BigReal& o) { return *this = *this / o; }
  BigReal& operator+=(long o) { return *this = *this + o; }
  BigReal& operator-=(long o) { return *this = *this - o; }
  BigReal& operator*=(long o) { return *this = *this * o; }
  BigReal& operator/=(long o) { return *this = *this / o; }

  friend BigReal operator+(const BigReal& a, const BigReal& b) {
    BigReal r = result_for(a, b);
    mpfr_add(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator-(const BigReal& a, const BigReal& b) {
    BigReal r = result_for(a, b);
    mpfr_sub(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator*(const BigReal& a, const BigReal& b) {
    BigReal r = result_for(a, b);
    mpfr_mul(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator/(const BigReal& a, const BigReal& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    BigReal r = result_for(a, b);
    mpfr_div(r.x_, a.x_, b.x_, MPFR_RNDN);
    return r;
  }

  friend BigReal operator+(const BigReal& a, long b) {
    BigReal r = with_precision(a.bits(), a.digits_);
    mpfr_add_si(r.x_, a.x_, b, MPFR_RNDN);
    return r;
  }
  friend BigReal operator-(const BigReal& a, long b) {
    BigReal r = with_precision(a.bits(), a.digits_);
    mpfr_sub_si(r.x_, a.x_, b, MPFR_RNDN);
    return r;
  }
  friend BigReal operator+(long a, const BigReal& b) { return b + a; }
  friend BigReal operator-(long a, const BigReal& b) {
    BigReal r = with_precision(b.bits(), b.digits_);
    mpfr_si_sub(r.x_, a, b.x_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator*(const BigReal& a, long b) {
    BigReal r = with_precision(a.bits(), a.digits_);
    mpfr_mul_si(r.x_, a.x_, b, MPFR_RNDN);
    return r;
  }
  friend BigReal operator*(long a, const BigReal& b) { return b * a; }
  friend BigReal operator/(const BigReal& a, long b) {
    if (b == 0) throw DomainError("division by zero");
    BigReal r = with_precision(a.bits(), a.digits_);
    mpfr_div_si(r.x_, a.x_, b, MPFR_RNDN);
    return r;
  }
  friend BigReal operator/(long a, const BigReal& b) {
    if (b.is_zero()) throw DomainError("division by zero");
    BigReal r = with_precision(b.bits(), b.digits_);
    mpfr_si_div(r.x_, a, b.x_, MPFR_RNDN);
    return r;
  }

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.x_, b.x_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
    if (mpfr_unordered_p(a.x_, b.x_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.x_, b.x_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.x_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, long b) {
    int c = mpfr_cmp_si(a.x_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

 private:
  static BigReal result_for(const BigReal& a, const BigReal& b) {
    return with_precision(std::max(a.bits(), b.bits()), std::max(a.digits_, b.digits_));
  }

  mpfr_t x_;
  int digits_;
};

inline BigReal abs(const BigReal& x) {
  BigReal r = BigReal::with_precision(x.bits(), x.precision_digits());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

inline const BigReal& max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }

/// Decimal working precision, guard digits and the derived truncation
/// tolerance. Contexts are immutable values.
class PrecisionContext {
 public:
  static constexpr int kDefaultGuard = 15;
  static constexpr int kMinGuard = 10;

  explicit PrecisionContext(int digits, int guard = kDefaultGuard)
      : digits_(digits), guard_(guard) {
    if (digits < 1) throw DomainError("digits must be positive, got " + std::to_string(digits));
    if (guard < kMinGuard) {
      throw DomainError("guard must be at least " + std::to_string(kMinGuard) + ", got " +
                        std::to_string(guard));
    }
    tail_tol_ = pow10(-working_digits());
  }

  int digits() const { return digits_; }
  int guard() const { return guard_; }
  int working_digits() const { return digits_ + guard_; }
  mpfr_prec_t bits() const { return detail::digits_to_bits(working_digits()); }

  /// Truncation tolerance for every series; 10^-working_digits unless
  /// overridden through with_tail_tol.
  const BigReal& tail_tol() const { return tail_tol_; }

  PrecisionContext with_tail_tol(const BigReal& tol) const {
    if (!(tol > 0L)) throw DomainError("tail tolerance must be positive");
    PrecisionContext c = *this;
    c.tail_tol_ = real(0L) + tol;
    return c;
  }

  /// Same guard, `extra` more requested digits.
  PrecisionContext widened(int extra) const { return PrecisionContext(digits_ + extra, guard_); }

  BigReal real(long v) const { return BigReal(v, bits(), working_digits()); }

  BigReal ratio(long num, long den) const { return real(num) / den; }

  BigReal parse(std::string_view text) const {
    return BigReal::from_decimal(text, bits(), working_digits());
  }

  /// Re-rounds a value to this context's precision.
  BigReal adopt(const BigReal& x) const {
    BigReal r = BigReal::with_precision(bits(), working_digits());
    mpfr_set(r.get(), x.get(), MPFR_RNDN);
    return r;
  }

  BigReal pow10(long e) const {
    BigReal r = real(0L);
    mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
    if (e < 0) mpfr_ui_div(r.get(), 1, r.get(), MPFR_RNDN);
    return r;
  }

 private:
  int digits_;
  int guard_;
  BigReal tail_tol_;
};

/// pi at the working precision of the context.
inline BigReal const_pi(const PrecisionContext& ctx) {
  BigReal r = ctx.real(0L);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

enum class ElemFn { exp, ln, sqrt, sin, cos, sinh, cosh, arctan };

inline std::string_view to_string(ElemFn fn) {
  switch (fn) {
    case ElemFn::exp: return "exp";
    case ElemFn::ln: return "ln";
    case ElemFn::sqrt: return "sqrt";
    case ElemFn::sin: return "sin";
    case ElemFn::cos: return "cos";
    case ElemFn::sinh: return "sinh";
    case ElemFn::cosh: return "cosh";
    case ElemFn::arctan: return "arctan";
  }
  return "?";
}

/// Elementary function at the context's working precision. Correctly
/// rounded (MPFR), i.e. at most half a unit in the last binary place.
inline BigReal elem(ElemFn fn, const BigReal& x, const PrecisionContext& ctx) {
  if (!x.is_finite()) {
    throw DomainError(std::string(to_string(fn)) + ": non-finite argument " + x.to_decimal(20));
  }
  if ((fn == ElemFn::ln && !(x > 0L)) || (fn == ElemFn::sqrt && x < 0L)) {
    throw DomainError(std::string(to_string(fn)) + ": argument out of domain: " + x.to_decimal(20));
  }
  BigReal r = ctx.real(0L);
  switch (fn) {
    case ElemFn::exp: mpfr_exp(r.get(), x.get(), MPFR_RNDN); break;
    case ElemFn::ln: mpfr_log(r.get(), x.get(), MPFR_RNDN); break;
    case ElemFn::sqrt: mpfr_sqrt(r.get(), x.get(), MPFR_RNDN); break;
    case ElemFn::sin: mpfr_sin(r.get(), x.get(), MPFR_RNDN); break;
    case ElemFn::cos: mpfr_cos(r.get(), x.get(), MPFR_RNDN); break;
    case ElemFn::sinh: mpfr_sinh(r.get(), x.get(), MPFR_RNDN); break;
    case ElemFn::cosh: mpfr_cosh(r.get(), x.get(), MPFR_RNDN); break;
    case ElemFn::arctan: mpfr_atan(r.get(), x.get(), MPFR_RNDN); break;
  }
  if (!r.is_finite()) {
    throw DomainError(std::string(to_string(fn)) + ": result overflows for " + x.to_decimal(20));
  }
  return r;
}

inline BigReal exp(const BigReal& x, const PrecisionContext& ctx) { return elem(ElemFn::exp, x, ctx); }
inline BigReal ln(const BigReal& x, const PrecisionContext& ctx) { return elem(ElemFn::ln, x, ctx); }
inline BigReal sqrt(const BigReal& x, const PrecisionContext& ctx) { return elem(ElemFn::sqrt, x, ctx); }
inline BigReal sin(const BigReal& x, const PrecisionContext& ctx) { return elem(ElemFn::sin, x, ctx); }
inline BigReal cos(const BigReal& x, const PrecisionContext& ctx) { return elem(ElemFn::cos, x, ctx); }
inline BigReal sinh(const BigReal& x, const PrecisionContext& ctx) { return elem(ElemFn::sinh, x, ctx); }
inline BigReal cosh(const BigReal& x, const PrecisionContext& ctx) { return elem(ElemFn::cosh, x, ctx); }
inline BigReal arctan(const BigReal& x, const PrecisionContext& ctx) { return elem(ElemFn::arctan, x, ctx); }

inline BigReal ln(long m, const PrecisionContext& ctx) { return ln(ctx.real(m), ctx); }

/// x^e for integer e.
inline BigReal pow(const BigReal& x, long e, const PrecisionContext& ctx) {
  BigReal r = ctx.real(0L);
  mpfr_pow_si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

/// x^y for x > 0.
inline BigReal pow(const BigReal& x, const BigReal& y, const PrecisionContext& ctx) {
  if (!(x > 0L)) throw DomainError("pow: base must be positive, got " + x.to_decimal(20));
  BigReal r = ctx.real(0L);
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

/// n! as a real at the context's precision.
inline BigReal factorial(long n, const PrecisionContext& ctx) {
  if (n < 0) throw DomainError("factorial of negative integer");
  BigReal r = ctx.real(0L);
  mpfr_fac_ui(r.get(), static_cast<unsigned long>(n), MPFR_RNDN);
  return r;
}

}  // namespace almostid

#endif  // ALMOSTID_PRECISION_HPP
