#ifndef YMLAB_CHECKS_HPP
#define YMLAB_CHECKS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ymlab {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
};

// Names accepted by run_checks besides "all".
std::vector<std::string> check_suites();

// Runs the invariant corpus on small grids with the given seed. Unknown suite
// names raise invalid_input.
std::vector<CheckResult> run_checks(const std::string& suite, std::uint64_t seed = 42);

}  // namespace ymlab

#endif
