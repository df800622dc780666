// Exact rationals and the exact targets t_n in Q or pi*Q.

#ifndef ALMOSTID_RATIONAL_HPP
#define ALMOSTID_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "almostid/precision.hpp"

namespace almostid {

/// Rational number in lowest terms with positive denominator.
class ExactRational {
 public:
  ExactRational() : q_(0) {}
  ExactRational(long num, long den = 1) : ExactRational(mpz_class(num), mpz_class(den)) {}

  ExactRational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  /// Parses "p/q" or "p".
  static ExactRational parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return ExactRational(mpz_class(s), mpz_class(1));
      return ExactRational(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw DomainError("malformed rational: '" + s + "'");
    }
  }

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& get() const { return q_; }

  std::string to_string() const { return q_.get_num().get_str() + "/" + q_.get_den().get_str(); }

  BigReal to_real(const PrecisionContext& ctx) const {
    BigReal r = ctx.real(0L);
    mpfr_set_q(r.get(), q_.get_mpq_t(), MPFR_RNDN);
    return r;
  }

  friend ExactRational operator+(const ExactRational& a, const ExactRational& b) { return from(a.q_ + b.q_); }
  friend ExactRational operator-(const ExactRational& a, const ExactRational& b) { return from(a.q_ - b.q_); }
  friend ExactRational operator*(const ExactRational& a, const ExactRational& b) { return from(a.q_ * b.q_); }
  friend ExactRational operator/(const ExactRational& a, const ExactRational& b) {
    if (b.q_ == 0) throw DomainError("rational division by zero");
    return from(a.q_ / b.q_);
  }
  friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.q_ == b.q_; }

 private:
  static ExactRational from(mpq_class q) {
    ExactRational r;
    r.q_ = std::move(q);
    r.q_.canonicalize();
    return r;
  }

  mpq_class q_;
};

/// q or q*pi. Multiplication by pi is deferred to value().
struct ExactTarget {
  ExactRational q;
  bool has_pi = false;

  BigReal value(const PrecisionContext& ctx) const {
    BigReal v = q.to_real(ctx);
    return has_pi ? v * const_pi(ctx) : v;
  }

  /// "3*pi/128", "1/30", "pi".
  std::string to_string() const {
    const std::string num = q.numerator().get_str();
    const std::string den = q.denominator().get_str();
    if (!has_pi) return den == "1" ? num : num + "/" + den;
    std::string s = num == "1" ? "pi" : (num == "-1" ? "-pi" : num + "*pi");
    return den == "1" ? s : s + "/" + den;
  }

  friend bool operator==(const ExactTarget&, const ExactTarget&) = default;
};

}  // namespace almostid

#endif  // ALMOSTID_RATIONAL_HPP
