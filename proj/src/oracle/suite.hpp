#pragma once

#include <cstdint>
#include <vector>

#include "oracle/report.hpp"

namespace ppl::oracle {

struct VerifyOptions {
  std::vector<int> k_values{3, 4, 5, 6};
  bool inject_nonproper = false;  // routes a corrupted kernel into the positive checks
  std::uint64_t seed = 8135901;
};

// Runs every registered identity check over the requested class counts.
// Deterministic: identical options produce an identical report.
VerificationReport run_verification(const VerifyOptions& options);

}  // namespace ppl::oracle
