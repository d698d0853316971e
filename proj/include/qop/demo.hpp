#pragma once

// Worked examples with concrete qubit observables: the four combinations of
// two 3-outcome POVMs, and the instrument non-equalities.

#include <cstdint>
#include <string>
#include <vector>

namespace qop {

struct DemoCheck {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  /// When set, the check passes if deviation exceeds tolerance.
  bool expect_gap = false;
  bool passed = false;
};

struct DemoResult {
  std::vector<DemoCheck> checks;
  /// Human-readable listing of the matrices involved.
  std::string text;
  bool all_passed() const;
};

DemoResult run_demo(std::uint64_t seed = 42);

}  // namespace qop
