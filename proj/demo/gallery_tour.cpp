// Walks through the near-integer catalogue at 60 digits.

#include <iostream>

#include "almostid/almostid.hpp"

int main() {
  const almostid::PrecisionContext ctx(60);
  for (const auto& id : almostid::gallery_ids()) {
    const auto e = almostid::gallery_item(id, ctx);
    std::cout << (e.passed ? "ok   " : "FAIL ") << e.id << "\n     " << e.description
              << "\n     delta = " << e.delta.to_decimal(6) << '\n';
  }
}
