#include <iostream>

#include "symspace/acceptance.hpp"

int main() {
  auto results = symspace::run_acceptance(std::cout);
  int failed = 0;
  for (const auto& r : results)
    if (!r.pass) ++failed;
  return failed == 0 ? 0 : 1;
}
