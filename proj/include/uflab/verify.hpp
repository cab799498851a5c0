#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace uflab {

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

// Fast self-check of the implementation's invariants across all modules.
// Claims that are known to disagree with the circuit (edge length, xi) are
// not part of it; the acceptance binary reports those.
std::vector<CheckResult> run_invariant_suite(std::uint64_t seed);

}  // namespace uflab
