#include "wtheta/acceptance.hpp"

#include <cstdint>
#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  std::uint64_t seed = 12345;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  return wtheta::run_acceptance(seed, std::cout);
}
