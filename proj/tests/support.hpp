// Small helpers shared by the unit suites.

#ifndef ALMOSTID_TESTS_SUPPORT_HPP
#define ALMOSTID_TESTS_SUPPORT_HPP

#include <string>

#include "almostid/almostid.hpp"

namespace testing {

using almostid::BigReal;
using almostid::PrecisionContext;

// |a - b| <= 10^-digits * max(1, |b|)
inline bool close(const BigReal& a, const BigReal& b, int digits, const PrecisionContext& ctx) {
  BigReal scale = almostid::abs(b);
  if (scale < 1L) scale = ctx.real(1L);
  return almostid::abs(a - b) <= ctx.pow10(-digits) * scale;
}

// |a - b| <= 10^-digits * |b|
inline bool rel_close(const BigReal& a, const BigReal& b, int digits, const PrecisionContext& ctx) {
  return almostid::abs(a - b) <= ctx.pow10(-digits) * almostid::abs(b);
}

inline std::string show(const BigReal& x) { return x.to_decimal(25); }

}  // namespace testing

#endif  // ALMOSTID_TESTS_SUPPORT_HPP
