#include <iostream>

#include "hadamard/verify.hpp"

int main() {
  std::size_t failed = 0;
  const auto results = hadamard::verify::run_acceptance();
  for (const auto& r : results) {
    std::cout << hadamard::verify::format_line(r) << "\n";
    failed += !r.passed;
  }
  std::cout << results.size() - failed << "/" << results.size() << " acceptance criteria passed\n";
  return failed == 0 ? 0 : 1;
}
