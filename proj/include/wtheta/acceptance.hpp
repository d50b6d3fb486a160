#pragma once

#include <cstdint>
#include <ostream>

namespace wtheta {

// Runs the nine verification criteria, printing one PASS/FAIL line per
// criterion to `out`. Returns the number of failures.
int run_acceptance(std::uint64_t seed, std::ostream& out);

}  // namespace wtheta
