// Prints u_n(m) - t_n next to the predicted correction for a small grid.
//
//   delta_table [digits]

#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "almostid/almostid.hpp"

int main(int argc, char** argv) {
  const int digits = argc > 1 ? std::atoi(argv[1]) : 30;
  const almostid::PrecisionContext ctx(digits);

  std::cout << std::left << std::setw(4) << "m" << std::setw(4) << "n" << std::setw(12) << "t_n"
            << std::setw(26) << "u_n - t_n" << "residual\n";
  for (long m : {2L, 3L, 4L}) {
    for (int n = 1; n <= 8; ++n) {
      const auto rep = almostid::verify_identity(n, m, ctx);
      std::cout << std::setw(4) << m << std::setw(4) << n << std::setw(12) << rep.target.to_string()
                << std::setw(26) << rep.delta.to_decimal(12) << rep.residual.to_decimal(3)
                << (rep.passed ? "" : "  FAIL") << '\n';
    }
  }
}
