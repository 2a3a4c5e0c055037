#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relex/amalgamation.h"

namespace relex {

struct ClaimResult {
  std::string id;
  std::string claim;
  bool passed = false;
  std::string detail;
};

// The equivalence-relation family on {1,2,3}: S_1 separates 2 and 3, S_2
// joins 1 and 3, S_3 joins 1 and 2.
Family equivalence_triangle_family();

// Runs every worked example shipped with the library and reports one result
// per claim. Monte Carlo claims draw from seeds derived from `meta_seed`.
std::vector<ClaimResult> verify_paper_examples(std::uint64_t meta_seed = 0);

}  // namespace relex
