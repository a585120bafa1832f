#include <iostream>

#include "parabarrier/acceptance.hpp"

int main() {
  int failed = parabarrier::acceptance::run_all(std::cout);
  if (failed > 0) {
    std::cout << failed << " criterion/criteria FAILED\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
